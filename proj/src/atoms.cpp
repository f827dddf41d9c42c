#include "umt/atoms.hpp"

#include <algorithm>

#include "umt/errors.hpp"
#include "umt/newick.hpp"

namespace umt {

Triple make_triple(std::string x, std::string y, std::string outsider) {
  if (x == y || x == outsider || y == outsider) throw UsageError("triple needs three distinct species");
  if (y < x) std::swap(x, y);
  return {std::move(x), std::move(y), std::move(outsider)};
}

Fan make_fan(std::string x, std::string y, std::string z) {
  if (x == y || x == z || y == z) throw UsageError("fan needs three distinct species");
  std::array<std::string, 3> v{std::move(x), std::move(y), std::move(z)};
  std::sort(v.begin(), v.end());
  return {std::move(v)};
}

std::string to_string(const Atom& atom) {
  if (const auto* t = std::get_if<Triple>(&atom)) return "(" + t->a + "," + t->b + ")" + t->c;
  const auto& f = std::get<Fan>(atom);
  return "(" + f.v[0] + "," + f.v[1] + "," + f.v[2] + ")";
}

Atom parse_atom(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const char* what) -> ParseError { return ParseError(what, pos); };
  auto label = [&] {
    const auto start = pos;
    while (pos < text.size() && is_valid_label(text.substr(pos, 1))) ++pos;
    if (pos == start) throw fail("expected a species label");
    return std::string(text.substr(start, pos - start));
  };
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c) throw fail("unexpected character in atom");
    ++pos;
  };
  expect('(');
  std::vector<std::string> inside{label()};
  while (pos < text.size() && text[pos] == ',') {
    ++pos;
    inside.push_back(label());
  }
  expect(')');
  try {
    if (inside.size() == 3 && pos == text.size()) return make_fan(inside[0], inside[1], inside[2]);
    if (inside.size() == 2) {
      auto out = label();
      if (pos != text.size()) throw fail("trailing characters after atom");
      return make_triple(inside[0], inside[1], std::move(out));
    }
  } catch (const UsageError& e) {
    throw ParseError(e.what(), 0);
  }
  throw fail("atom must be (a,b)c or (a,b,c)");
}

std::array<std::string, 3> species_of(const Atom& atom) {
  if (const auto* t = std::get_if<Triple>(&atom)) return {t->a, t->b, t->c};
  return std::get<Fan>(atom).v;
}

Resolution resolve(const PhyloTree& tree, std::string_view x, std::string_view y, std::string_view z) {
  const auto nx = tree.find(x), ny = tree.find(y), nz = tree.find(z);
  if (!nx || !ny || !nz) throw UsageError("resolve: species not in tree");
  const auto depth = tree.depth_labels();
  const int xy = depth[tree.mrca(*nx, *ny)];
  const int xz = depth[tree.mrca(*nx, *nz)];
  const int yz = depth[tree.mrca(*ny, *nz)];
  if (xy > xz) return Resolution::FirstPair;
  if (xz > xy) return Resolution::SecondPair;
  if (yz > xy) return Resolution::ThirdPair;
  return Resolution::Fan;
}

bool tree_displays_atom(const PhyloTree& tree, const Atom& atom) {
  if (const auto* t = std::get_if<Triple>(&atom)) return resolve(tree, t->a, t->b, t->c) == Resolution::FirstPair;
  const auto& f = std::get<Fan>(atom);
  return resolve(tree, f.v[0], f.v[1], f.v[2]) == Resolution::Fan;
}

}  // namespace umt

#include "umt/sidecar.hpp"

#include <charconv>
#include <sstream>
#include <string>

#include "umt/errors.hpp"
#include "umt/newick.hpp"

namespace umt {

namespace {

int to_int(const std::string& s, std::size_t line) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("expected an integer, got '" + s + "'", line);
  return v;
}

}  // namespace

std::vector<SideConstraint> parse_sidecar(std::string_view text) {
  std::vector<SideConstraint> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty()) continue;
    auto labels = [&](std::size_t from, std::size_t count) {
      for (std::size_t i = from; i < from + count; ++i)
        if (!is_valid_label(w[i])) throw ParseError("invalid species label '" + w[i] + "'", line);
    };
    if (w[0] == "predates") {
      if (w.size() != 5) throw ParseError("predates takes four species", line);
      labels(1, 4);
      out.push_back(Predates{w[1], w[2], w[3], w[4]});
    } else if (w[0] == "bounds") {
      if (w.size() != 5) throw ParseError("bounds takes two species and two integers", line);
      labels(1, 2);
      const int lo = to_int(w[3], line), hi = to_int(w[4], line);
      out.push_back(DateBounds{w[1], w[2], lo, hi});
    } else {
      throw ParseError("unknown keyword '" + w[0] + "'", line);
    }
  }
  return out;
}

}  // namespace umt

// Brute-force reference implementations used only by the tests. They avoid
// the library's propagation code entirely and enumerate candidate values or
// trees directly.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "umt/atoms.hpp"
#include "umt/store.hpp"
#include "umt/tree.hpp"

namespace oracle {

using umt::IntervalDomain;

/// Tie for the minimum among three values.
inline bool ultrametric(int x, int y, int z) {
  std::array<int, 3> v{x, y, z};
  std::sort(v.begin(), v.end());
  return v[0] == v[1];
}

/// Tightest boxes supported by some ultrametric tuple, or nothing.
inline std::optional<std::array<IntervalDomain, 3>> bcz_um3(const std::array<IntervalDomain, 3>& d) {
  std::array<IntervalDomain, 3> out{{{1 << 30, -(1 << 30)}, {1 << 30, -(1 << 30)}, {1 << 30, -(1 << 30)}}};
  bool any = false;
  for (int x = d[0].lb; x <= d[0].ub; ++x)
    for (int y = d[1].lb; y <= d[1].ub; ++y)
      for (int z = d[2].lb; z <= d[2].ub; ++z) {
        if (!ultrametric(x, y, z)) continue;
        any = true;
        const std::array<int, 3> t{x, y, z};
        for (int i = 0; i < 3; ++i) {
          out[i].lb = std::min(out[i].lb, t[i]);
          out[i].ub = std::max(out[i].ub, t[i]);
        }
      }
  if (!any) return std::nullopt;
  return out;
}

/// Depth of the deepest common ancestor of two labelled nodes, found by
/// walking parent links (root depth 1).
inline int mrca_depth(const umt::PhyloTree& t, const std::string& a, const std::string& b) {
  auto path = [&](umt::NodeId v) {
    std::vector<umt::NodeId> p;
    for (; v != umt::kNoNode; v = t.parent(v)) p.push_back(v);
    std::reverse(p.begin(), p.end());
    return p;
  };
  const auto pa = path(*t.find(a));
  const auto pb = path(*t.find(b));
  int depth = 0;
  while (depth < int(pa.size()) && depth < int(pb.size()) && pa[depth] == pb[depth]) ++depth;
  return depth;
}

/// 0, 1, 2 for the closest pair xy, xz, yz; 3 for a fan.
inline int shape(const umt::PhyloTree& t, const std::string& x, const std::string& y, const std::string& z) {
  const int xy = mrca_depth(t, x, y), xz = mrca_depth(t, x, z), yz = mrca_depth(t, y, z);
  if (xy == xz && xz == yz) return 3;
  if (xy > xz) return 0;
  if (xz > xy) return 1;
  return 2;
}

/// Every three-leaf restriction of `sub` has the same shape in `super`.
/// Rooted trees are determined by these restrictions, so this equals display.
inline bool displays(const umt::PhyloTree& super, const umt::PhyloTree& sub) {
  const auto l = sub.leaf_labels();
  for (const auto& s : l)
    if (!super.find(s) || !super.is_leaf(*super.find(s))) return false;
  if (l.size() == 2) return true;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j)
      for (std::size_t k = j + 1; k < l.size(); ++k)
        if (shape(super, l[i], l[j], l[k]) != shape(sub, l[i], l[j], l[k])) return false;
  return true;
}

inline bool displays_atom(const umt::PhyloTree& t, const umt::Atom& a) {
  if (const auto* tr = std::get_if<umt::Triple>(&a)) return shape(t, tr->a, tr->b, tr->c) == 0;
  const auto& f = std::get<umt::Fan>(a).v;
  return shape(t, f[0], f[1], f[2]) == 3;
}

/// Random atom over `species` (at least 3).
inline umt::Atom random_atom(const std::vector<std::string>& species, std::mt19937_64& rng, double fan_rate = 0.15) {
  std::vector<std::string> pick = species;
  std::shuffle(pick.begin(), pick.end(), rng);
  if (std::uniform_real_distribution<double>(0, 1)(rng) < fan_rate) return umt::make_fan(pick[0], pick[1], pick[2]);
  return umt::make_triple(pick[0], pick[1], pick[2]);
}

/// Single-atom input tree: ((a,b),c) or (a,b,c).
inline std::string atom_newick(const umt::Atom& a) {
  if (const auto* t = std::get_if<umt::Triple>(&a)) return "((" + t->a + "," + t->b + ")," + t->c + ");";
  const auto& f = std::get<umt::Fan>(a).v;
  return "(" + f[0] + "," + f[1] + "," + f[2] + ");";
}

}  // namespace oracle

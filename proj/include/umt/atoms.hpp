#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "umt/tree.hpp"

namespace umt {

/// Rooted triple (ab)c: a and b are closer to each other than to c. Stored with a < b.
struct Triple {
  std::string a, b, c;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Unresolved fan (abc), stored sorted.
struct Fan {
  std::array<std::string, 3> v;
  friend auto operator<=>(const Fan&, const Fan&) = default;
};

using Atom = std::variant<Triple, Fan>;

/// Throws UsageError unless the three labels are distinct.
Triple make_triple(std::string x, std::string y, std::string outsider);
Fan make_fan(std::string x, std::string y, std::string z);

/// `(a,b)c` or `(a,b,c)`.
std::string to_string(const Atom& atom);
Atom parse_atom(std::string_view text);

std::array<std::string, 3> species_of(const Atom& atom);

enum class Resolution { FirstPair, SecondPair, ThirdPair, Fan };

/// Relationship of leaves x, y, z in `tree`: which pair (xy, xz, yz) has
/// the deepest mrca, or a fan. Labels must be leaves of the tree.
Resolution resolve(const PhyloTree& tree, std::string_view x, std::string_view y, std::string_view z);

/// True when the tree's restriction to the atom's three leaves is the atom.
bool tree_displays_atom(const PhyloTree& tree, const Atom& atom);

}  // namespace umt

#pragma once

#include <vector>

#include "umt/atoms.hpp"
#include "umt/tree.hpp"

namespace umt {

enum class BreakupMode { Hard, Soft };

/// Triples and fans of a tree, treating multifurcations as real (fans emitted).
/// Atoms come out in emission order without duplicates.
std::vector<Atom> hard_breakup(const PhyloTree& tree);

/// Triples only; multifurcations are read as missing resolution.
std::vector<Atom> soft_breakup(const PhyloTree& tree);

std::vector<Atom> breakup(const PhyloTree& tree, BreakupMode mode);

}  // namespace umt

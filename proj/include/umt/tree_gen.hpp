#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "umt/tree.hpp"

namespace umt {

/// Calls `visit` once for every rooted tree on `labels` whose internal
/// nodes have at least two children (each tree exactly once up to
/// isomorphism). At most 8 labels.
void for_each_rooted_tree(const std::vector<std::string>& labels, const std::function<void(const PhyloTree&)>& visit);
std::vector<PhyloTree> all_rooted_trees(const std::vector<std::string>& labels);

/// Labels "s1", "s2", ... "sN".
std::vector<std::string> species_labels(std::size_t n);

/// Random tree built by recursive random splits. Each split is binary,
/// except with probability `multifurcation` it uses 3 or 4 parts.
PhyloTree random_tree(const std::vector<std::string>& labels, std::mt19937_64& rng, double multifurcation = 0.0);

struct GeneratedForest {
  PhyloTree source;
  std::vector<PhyloTree> trees;
};

/// One random tree on `leaves` species and `trees` restrictions of it, each
/// dropping every leaf with probability `prune` (at least 3 leaves are kept
/// when available). Compatible by construction; deterministic per seed.
GeneratedForest generate_forest(std::size_t leaves, std::size_t trees, double prune, std::uint64_t seed,
                                double multifurcation = 0.3);

/// Draw uniformly from [0, bound) using only the engine's raw output.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound);
double draw_unit(std::mt19937_64& rng);

}  // namespace umt

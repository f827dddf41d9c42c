#include "umt/tree_gen.hpp"

#include <algorithm>

#include "umt/errors.hpp"

namespace umt {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling keeps the draw unbiased and platform independent.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<std::string> species_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("s" + std::to_string(i));
  return out;
}

namespace {

void grow(PhyloTree& t, const std::vector<std::string>& labels, std::size_t next,
          const std::function<void(const PhyloTree&)>& visit) {
  if (next == labels.size()) {
    visit(t);
    return;
  }
  const auto existing = t.node_count();
  for (NodeId u = 0; u < static_cast<NodeId>(existing); ++u) {
    // New leaf as an extra child of an internal node.
    if (!t.is_leaf(u)) {
      PhyloTree copy = t;
      copy.add_node(u, labels[next]);
      grow(copy, labels, next + 1, visit);
    }
    // New leaf as sibling of u under a fresh node subdividing u's parent edge.
    PhyloTree copy = t;
    const auto w = copy.insert_above(u);
    copy.add_node(w, labels[next]);
    grow(copy, labels, next + 1, visit);
  }
}

void split(PhyloTree& t, NodeId parent, std::vector<std::string> group, std::mt19937_64& rng, double multi) {
  if (group.size() == 1) {
    t.add_node(parent, group.front());
    return;
  }
  const auto id = t.add_node(parent);
  std::size_t parts = 2;
  if (group.size() >= 3 && draw_unit(rng) < multi) parts = std::min<std::size_t>(group.size(), 3 + draw(rng, 2));
  // Shuffle, then cut at parts-1 distinct random positions.
  for (std::size_t i = group.size() - 1; i > 0; --i) std::swap(group[i], group[draw(rng, i + 1)]);
  std::vector<std::size_t> cuts;
  while (cuts.size() + 1 < parts) {
    const auto c = 1 + draw(rng, group.size() - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(group.size());
  std::size_t from = 0;
  for (auto to : cuts) {
    split(t, id, std::vector<std::string>(group.begin() + from, group.begin() + to), rng, multi);
    from = to;
  }
}

}  // namespace

void for_each_rooted_tree(const std::vector<std::string>& labels, const std::function<void(const PhyloTree&)>& visit) {
  if (labels.empty()) return;
  if (labels.size() > 8) throw UsageError("all_rooted_trees: at most 8 leaves");
  PhyloTree t;
  if (labels.size() == 1) {
    t.add_node(kNoNode, labels.front());
    visit(t);
    return;
  }
  const auto root = t.add_node(kNoNode);
  t.add_node(root, labels[0]);
  t.add_node(root, labels[1]);
  grow(t, labels, 2, visit);
}

std::vector<PhyloTree> all_rooted_trees(const std::vector<std::string>& labels) {
  std::vector<PhyloTree> out;
  for_each_rooted_tree(labels, [&](const PhyloTree& t) { out.push_back(t); });
  return out;
}

PhyloTree random_tree(const std::vector<std::string>& labels, std::mt19937_64& rng, double multifurcation) {
  if (labels.empty()) throw UsageError("random_tree: no labels");
  PhyloTree t;
  split(t, kNoNode, labels, rng, multifurcation);
  return t;
}

GeneratedForest generate_forest(std::size_t leaves, std::size_t trees, double prune, std::uint64_t seed,
                                double multifurcation) {
  std::mt19937_64 rng(seed);
  GeneratedForest out;
  const auto labels = species_labels(leaves);
  out.source = random_tree(labels, rng, multifurcation);
  for (std::size_t t = 0; t < trees; ++t) {
    std::vector<std::string> keep;
    for (const auto& l : labels)
      if (draw_unit(rng) >= prune) keep.push_back(l);
    const auto want = std::min<std::size_t>(3, labels.size());
    while (keep.size() < want) {
      const auto& l = labels[draw(rng, labels.size())];
      if (std::find(keep.begin(), keep.end(), l) == keep.end()) keep.push_back(l);
    }
    out.trees.push_back(restrict_and_suppress(out.source, keep));
  }
  return out;
}

}  // namespace umt

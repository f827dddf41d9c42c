#include "umt/tree_matrix.hpp"

#include <algorithm>
#include <unordered_map>

namespace umt {

std::optional<UltrametricViolation> find_ultrametric_violation(const IntMatrix& m) {
  const auto n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) != 0) return UltrametricViolation{{i, i, i}, "non-zero diagonal"};
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i)) return UltrametricViolation{{i, j, j}, "not symmetric"};
      if (m(i, j) <= 0) return UltrametricViolation{{i, j, j}, "non-positive off-diagonal entry"};
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const int a = m(i, j), b = m(i, k), c = m(j, k);
        const int lo = std::min({a, b, c});
        if (int(a == lo) + int(b == lo) + int(c == lo) < 2) {
          return UltrametricViolation{{i, j, k}, "no tie for the minimum among " + m.labels()[i] + ", " +
                                                     m.labels()[j] + ", " + m.labels()[k]};
        }
      }
  return std::nullopt;
}

IntMatrix tree_to_matrix(const PhyloTree& tree, const std::vector<std::string>& order) {
  auto labels = order.empty() ? tree.leaf_labels() : order;
  IntMatrix m(labels);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  if (tree.empty()) return m;

  const auto depth = tree.depth_labels();
  // Leaf indices below each node, filled bottom-up.
  std::vector<std::vector<std::size_t>> below(tree.node_count());
  const auto pre = tree.preorder();
  std::size_t seen = 0;
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const auto v = *it;
    if (tree.is_leaf(v)) {
      const auto f = index.find(tree.node(v).label);
      if (f == index.end()) throw UsageError("tree_to_matrix: leaf '" + tree.node(v).label + "' not in order");
      below[v].push_back(f->second);
      ++seen;
      continue;
    }
    auto& acc = below[v];
    for (auto c : tree.children(v)) {
      for (auto a : acc)
        for (auto b : below[c]) m.set(a, b, depth[v]);
      acc.insert(acc.end(), below[c].begin(), below[c].end());
      below[c].clear();
      below[c].shrink_to_fit();
    }
  }
  if (seen != labels.size()) throw UsageError("tree_to_matrix: order does not match the tree's leaves");
  return m;
}

namespace {

void attach(const IntMatrix& m, const std::vector<std::size_t>& group, NodeId parent, int parent_value,
            bool ranks, PhyloTree& out) {
  if (group.size() == 1) {
    out.add_node(parent, m.labels()[group.front()]);
    return;
  }
  const auto s = group.front();
  std::vector<int> values;
  for (std::size_t t = 1; t < group.size(); ++t) values.push_back(m(s, group[t]));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // Path from `parent` down to leaf s: one node per distinct row value.
  std::vector<NodeId> path;
  NodeId at = parent;
  for (auto v : values) {
    if (at != kNoNode && v == parent_value && path.empty()) {
      path.push_back(at);
      continue;
    }
    at = out.add_node(at, {}, ranks ? std::optional<int>(v) : std::nullopt);
    path.push_back(at);
  }
  out.add_node(path.back(), m.labels()[s]);

  for (std::size_t d = 0; d < values.size(); ++d) {
    std::vector<std::size_t> part;
    for (std::size_t t = 1; t < group.size(); ++t)
      if (m(s, group[t]) == values[d]) part.push_back(group[t]);
    attach(m, part, path[d], values[d], ranks, out);
  }
}

}  // namespace

PhyloTree matrix_to_tree(const IntMatrix& m, bool values_as_ranks) {
  if (m.size() == 0) throw UsageError("matrix_to_tree: empty matrix");
  if (auto v = find_ultrametric_violation(m)) throw NotUltrametric(*v);
  PhyloTree out;
  if (m.size() == 1) {
    out.add_node(kNoNode, m.labels().front());
    return out;
  }
  std::vector<std::size_t> all(m.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  attach(m, all, kNoNode, 0, values_as_ranks, out);
  return out;
}

}  // namespace umt

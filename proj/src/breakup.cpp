#include "umt/breakup.hpp"

#include <algorithm>
#include <set>

namespace umt {

namespace {

// Mutable copy of a tree that the breakup procedures collapse bottom-up.
class Workspace {
 public:
  explicit Workspace(const PhyloTree& t) : parent_(t.node_count()), children_(t.node_count()), label_(t.node_count()) {
    for (auto v : t.preorder()) {
      parent_[v] = t.parent(v);
      children_[v] = t.children(v);
      label_[v] = t.node(v).label;
    }
    root_ = t.root();
    const auto depth = t.depth_labels();
    for (auto v : t.preorder())
      if (!t.is_leaf(v)) interior_.push_back(v);
    // Non-increasing depth; preorder position breaks ties.
    std::stable_sort(interior_.begin(), interior_.end(), [&](NodeId a, NodeId b) { return depth[a] > depth[b]; });
  }

  const std::vector<NodeId>& interior() const { return interior_; }
  bool is_root(NodeId v) const { return v == root_; }
  std::size_t degree(NodeId v) const { return children_[v].size(); }
  NodeId child(NodeId v, std::size_t i) const { return children_[v][i]; }
  const std::string& label(NodeId v) const { return label_[v]; }

  void becomes_leaf(NodeId v, NodeId c) {
    label_[v] = label_[c];
    children_[v].clear();
  }
  void remove_child(NodeId c, NodeId v) {
    auto& ch = children_[v];
    ch.erase(std::find(ch.begin(), ch.end(), c));
  }

  // Smallest leaf label below any sibling of leaf l's parent.
  const std::string& uncle_or_cousin(NodeId l) const {
    const NodeId v = parent_[l];
    const NodeId g = parent_[v];
    const std::string* best = nullptr;
    std::vector<NodeId> stack;
    for (auto s : children_[g])
      if (s != v) stack.push_back(s);
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      if (children_[x].empty()) {
        if (!best || label_[x] < *best) best = &label_[x];
      }
      for (auto c : children_[x]) stack.push_back(c);
    }
    return *best;
  }

 private:
  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::string> label_;
  std::vector<NodeId> interior_;
  NodeId root_ = kNoNode;
};

class AtomSet {
 public:
  void add(Atom a) {
    if (seen_.insert(a).second) out_.push_back(std::move(a));
  }
  std::vector<Atom> take() { return std::move(out_); }

 private:
  std::set<Atom> seen_;
  std::vector<Atom> out_;
};

}  // namespace

std::vector<Atom> hard_breakup(const PhyloTree& tree) {
  if (tree.empty() || tree.leaf_count() < 3) return {};
  Workspace w(tree);
  AtomSet s;
  const auto& order = w.interior();
  std::size_t i = 0;
  while (i < order.size() && (!w.is_root(order[i]) || w.degree(order[i]) > 2)) {
    const NodeId v = order[i];
    const NodeId c0 = w.child(v, 0);
    if (w.degree(v) == 2) {
      const NodeId c1 = w.child(v, 1);
      s.add(make_triple(w.label(c0), w.label(c1), w.uncle_or_cousin(c0)));
      w.becomes_leaf(v, c0);
      ++i;
    } else {
      for (std::size_t j = 1; j + 2 <= w.degree(v); ++j)
        for (std::size_t k = j + 1; k + 1 <= w.degree(v); ++k)
          s.add(make_fan(w.label(c0), w.label(w.child(v, j)), w.label(w.child(v, k))));
      w.remove_child(c0, v);
    }
  }
  return s.take();
}

std::vector<Atom> soft_breakup(const PhyloTree& tree) {
  if (tree.empty() || tree.leaf_count() < 3) return {};
  Workspace w(tree);
  AtomSet s;
  const auto& order = w.interior();
  std::size_t i = 0;
  while (i < order.size() && !w.is_root(order[i])) {
    const NodeId v = order[i];
    const NodeId c0 = w.child(v, 0);
    const NodeId c1 = w.child(v, 1);
    s.add(make_triple(w.label(c0), w.label(c1), w.uncle_or_cousin(c0)));
    if (w.degree(v) == 2) {
      w.becomes_leaf(v, c0);
      ++i;
    } else {
      w.remove_child(c0, v);
    }
  }
  return s.take();
}

std::vector<Atom> breakup(const PhyloTree& tree, BreakupMode mode) {
  return mode == BreakupMode::Hard ? hard_breakup(tree) : soft_breakup(tree);
}

}  // namespace umt

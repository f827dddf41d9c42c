#include "umt/tree.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "umt/errors.hpp"

namespace umt {

PhyloTree PhyloTree::single_leaf(std::string label) {
  PhyloTree t;
  t.add_node(kNoNode, std::move(label));
  return t;
}

NodeId PhyloTree::add_node(NodeId parent, std::string label, std::optional<int> rank) {
  if (parent == kNoNode && root_ != kNoNode) throw UsageError("tree already has a root");
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({std::move(label), rank, parent, {}});
  if (parent == kNoNode) {
    root_ = id;
  } else {
    nodes_[parent].children.push_back(id);
  }
  return id;
}

NodeId PhyloTree::insert_above(NodeId u) {
  const auto id = static_cast<NodeId>(nodes_.size());
  const NodeId p = nodes_[u].parent;
  nodes_.push_back({{}, std::nullopt, p, {u}});
  if (p == kNoNode) {
    root_ = id;
  } else {
    std::replace(nodes_[p].children.begin(), nodes_[p].children.end(), u, id);
  }
  nodes_[u].parent = id;
  return id;
}

std::vector<NodeId> PhyloTree::preorder() const {
  std::vector<NodeId> out;
  if (root_ == kNoNode) return out;
  out.reserve(nodes_.size());
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    out.push_back(v);
    const auto& ch = nodes_[v].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<NodeId> PhyloTree::leaves() const {
  std::vector<NodeId> out;
  for (auto v : preorder())
    if (is_leaf(v)) out.push_back(v);
  return out;
}

std::vector<std::string> PhyloTree::leaf_labels() const {
  std::vector<std::string> out;
  for (auto v : leaves()) out.push_back(nodes_[v].label);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t PhyloTree::leaf_count() const { return leaves().size(); }

std::optional<NodeId> PhyloTree::find(std::string_view label) const {
  for (auto v : preorder())
    if (nodes_[v].label == label) return v;
  return std::nullopt;
}

bool PhyloTree::has_internal_labels() const {
  for (auto v : preorder())
    if (!is_leaf(v) && !nodes_[v].label.empty()) return true;
  return false;
}

bool PhyloTree::has_ranks() const {
  for (const auto& n : nodes_)
    if (n.rank) return true;
  return false;
}

void PhyloTree::validate() const {
  if (root_ == kNoNode) throw UsageError("empty tree");
  std::unordered_set<std::string> seen;
  for (auto v : preorder()) {
    const auto& n = nodes_[v];
    if (n.children.empty()) {
      if (n.label.empty()) throw UsageError("unlabelled leaf");
    } else if (n.children.size() < 2) {
      throw UsageError("internal node with a single child");
    }
    if (!n.label.empty() && !seen.insert(n.label).second) {
      throw UsageError("duplicate label '" + n.label + "'");
    }
    if (n.rank && n.parent != kNoNode) {
      // Nearest ranked ancestor must have a strictly smaller rank.
      for (auto a = n.parent; a != kNoNode; a = nodes_[a].parent) {
        if (nodes_[a].rank) {
          if (*nodes_[a].rank >= *n.rank) throw UsageError("ranks must increase towards the leaves");
          break;
        }
      }
    }
  }
}

std::vector<int> PhyloTree::depth_labels() const {
  std::vector<int> depth(nodes_.size(), 0);
  for (auto v : preorder()) {
    const auto p = nodes_[v].parent;
    depth[v] = p == kNoNode ? 1 : depth[p] + 1;
  }
  return depth;
}

bool PhyloTree::is_descendant(NodeId a, NodeId b) const {
  for (auto x = nodes_[a].parent; x != kNoNode; x = nodes_[x].parent)
    if (x == b) return true;
  return false;
}

NodeId PhyloTree::mrca(NodeId a, NodeId b) const {
  std::unordered_set<NodeId> up;
  for (auto x = a; x != kNoNode; x = nodes_[x].parent) up.insert(x);
  for (auto x = b; x != kNoNode; x = nodes_[x].parent)
    if (up.count(x)) return x;
  return kNoNode;
}

std::vector<std::string> PhyloTree::leaf_labels_below(NodeId v) const {
  std::vector<std::string> out;
  std::vector<NodeId> stack{v};
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    if (is_leaf(x)) out.push_back(nodes_[x].label);
    for (auto c : nodes_[x].children) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string canon(const PhyloTree& t, NodeId v, const CanonicalOptions& opts) {
  const auto& n = t.node(v);
  if (n.children.empty()) return n.label;
  std::vector<std::string> parts;
  parts.reserve(n.children.size());
  for (auto c : n.children) parts.push_back(canon(t, c, opts));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  out += ')';
  if (opts.internal_labels) out += n.label;
  if (opts.ranks && n.rank) out += "#" + std::to_string(*n.rank);
  return out;
}

struct Sub {
  bool present = false;
  bool leaf = false;
  NodeId src = kNoNode;
  std::vector<Sub> kids;
};

Sub collect(const PhyloTree& src, NodeId v, const std::unordered_set<std::string>& keep) {
  Sub s;
  if (src.is_leaf(v)) {
    s.present = keep.count(src.node(v).label) > 0;
    s.leaf = true;
    s.src = v;
    return s;
  }
  for (auto c : src.children(v)) {
    auto k = collect(src, c, keep);
    if (k.present) s.kids.push_back(std::move(k));
  }
  if (s.kids.empty()) return s;
  if (s.kids.size() == 1) return std::move(s.kids.front());
  s.present = true;
  s.src = v;
  return s;
}

void emit(const PhyloTree& src, const Sub& s, NodeId parent, PhyloTree& dst) {
  const auto& n = src.node(s.src);
  const auto id = dst.add_node(parent, n.label, n.rank);
  for (const auto& k : s.kids) emit(src, k, id, dst);
}

}  // namespace

std::string canonical_form(const PhyloTree& t, CanonicalOptions opts) {
  if (t.empty()) return {};
  return canon(t, t.root(), opts);
}

bool isomorphic(const PhyloTree& a, const PhyloTree& b) {
  return canonical_form(a) == canonical_form(b);
}

PhyloTree restrict_and_suppress(const PhyloTree& t, const std::vector<std::string>& keep) {
  if (keep.empty()) throw UsageError("restriction to an empty leaf set");
  std::unordered_set<std::string> want(keep.begin(), keep.end());
  std::unordered_set<std::string> have;
  for (auto v : t.leaves()) have.insert(t.node(v).label);
  for (const auto& l : want)
    if (!have.count(l)) throw UsageError("'" + l + "' is not a leaf of the tree");
  const auto s = collect(t, t.root(), want);
  PhyloTree out;
  emit(t, s, kNoNode, out);
  return out;
}

bool displays(const PhyloTree& super, const PhyloTree& sub) {
  const auto sub_leaves = sub.leaf_labels();
  const auto sup_leaves = super.leaf_labels();
  if (!std::includes(sup_leaves.begin(), sup_leaves.end(), sub_leaves.begin(), sub_leaves.end())) {
    throw UsageError("displays: leaves of the subtree are not all leaves of the supertree");
  }
  const CanonicalOptions plain{false, false};
  return canonical_form(restrict_and_suppress(super, sub_leaves), plain) == canonical_form(sub, plain);
}

bool perfectly_displays(const PhyloTree& super, const PhyloTree& sub) {
  std::vector<std::pair<std::string, NodeId>> labelled;
  for (auto v : sub.preorder())
    if (!sub.node(v).label.empty()) labelled.emplace_back(sub.node(v).label, v);

  std::vector<NodeId> in_super;
  for (const auto& [label, v] : labelled) {
    const auto w = super.find(label);
    if (!w) return false;
    if (sub.is_leaf(v) && !super.is_leaf(*w)) return false;
    in_super.push_back(*w);
  }
  if (!displays(super, sub)) return false;
  for (std::size_t a = 0; a < labelled.size(); ++a) {
    for (std::size_t b = 0; b < labelled.size(); ++b) {
      if (a == b) continue;
      const bool before = sub.is_descendant(labelled[a].second, labelled[b].second);
      const bool after = super.is_descendant(in_super[a], in_super[b]);
      if (before != after) return false;
    }
  }
  return true;
}

}  // namespace umt

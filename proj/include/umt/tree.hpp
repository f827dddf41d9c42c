#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace umt {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

struct TreeNode {
  std::string label;
  std::optional<int> rank;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
};

/// Rooted tree with labelled leaves and optionally labelled/ranked internal nodes.
///
/// Nodes live in an arena addressed by NodeId. Child order carries no meaning.
class PhyloTree {
 public:
  PhyloTree() = default;

  static PhyloTree single_leaf(std::string label);

  /// Adds a node under `parent`; kNoNode creates the root of an empty tree.
  NodeId add_node(NodeId parent, std::string label = {}, std::optional<int> rank = {});
  /// Splices a new node between `u` and its parent; the new node gets `u` as only child.
  NodeId insert_above(NodeId u);
  void set_label(NodeId v, std::string label) { nodes_[v].label = std::move(label); }
  void set_rank(NodeId v, std::optional<int> rank) { nodes_[v].rank = rank; }

  bool empty() const { return nodes_.empty(); }
  NodeId root() const { return root_; }
  std::size_t node_count() const { return nodes_.size(); }
  const TreeNode& node(NodeId v) const { return nodes_[v]; }
  bool is_leaf(NodeId v) const { return nodes_[v].children.empty(); }
  NodeId parent(NodeId v) const { return nodes_[v].parent; }
  const std::vector<NodeId>& children(NodeId v) const { return nodes_[v].children; }

  /// Node ids in preorder from the root.
  std::vector<NodeId> preorder() const;
  std::vector<NodeId> leaves() const;
  /// Leaf labels, sorted.
  std::vector<std::string> leaf_labels() const;
  std::size_t leaf_count() const;
  /// Node carrying `label` (leaf or internal), if any.
  std::optional<NodeId> find(std::string_view label) const;
  bool has_internal_labels() const;
  bool has_ranks() const;

  /// Checks leaf labels (non-empty, unique), label uniqueness across all
  /// nodes, internal out-degree >= 2 and strictly increasing ranks along
  /// root-to-leaf paths. Throws UsageError on violation.
  void validate() const;

  /// Depth of every node; the root has depth 1.
  std::vector<int> depth_labels() const;
  /// True when `a` is a proper descendant of `b`.
  bool is_descendant(NodeId a, NodeId b) const;
  NodeId mrca(NodeId a, NodeId b) const;
  /// Leaf labels below `v` (sorted).
  std::vector<std::string> leaf_labels_below(NodeId v) const;

 private:
  std::vector<TreeNode> nodes_;
  NodeId root_ = kNoNode;
};

struct CanonicalOptions {
  bool internal_labels = true;
  bool ranks = false;
};

/// Order-independent string form; equal strings mean isomorphic trees.
std::string canonical_form(const PhyloTree& t, CanonicalOptions opts = {});

/// Unordered isomorphism respecting leaf labels and internal labels.
bool isomorphic(const PhyloTree& a, const PhyloTree& b);

/// Minimal subtree spanning `keep` with unary chains contracted.
/// Labels of contracted nodes are dropped. Throws UsageError if `keep` is
/// empty or names a label that is not a leaf of `t`.
PhyloTree restrict_and_suppress(const PhyloTree& t, const std::vector<std::string>& keep);

/// True iff `super` restricted to the leaves of `sub` equals `sub` (internal labels ignored).
/// Throws UsageError when leaves(sub) is not a subset of leaves(super).
bool displays(const PhyloTree& super, const PhyloTree& sub);

/// Perfect display of an X-tree: label containment, display of the leaf
/// topology, and identical proper-descendant relations between all labels of `sub`.
bool perfectly_displays(const PhyloTree& super, const PhyloTree& sub);

}  // namespace umt

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "umt/atoms.hpp"
#include "umt/breakup.hpp"
#include "umt/engine.hpp"
#include "umt/tree.hpp"
#include "umt/tree_matrix.hpp"
#include "umt/ultrametric.hpp"

namespace umt {

/// Input trees plus the sorted union of their leaf labels.
class Forest {
 public:
  Forest() = default;
  /// Validates every tree; throws UsageError on malformed input.
  explicit Forest(std::vector<PhyloTree> trees);

  const std::vector<PhyloTree>& trees() const { return trees_; }
  const std::vector<std::string>& species() const { return species_; }
  std::size_t size() const { return species_.size(); }
  std::optional<std::size_t> index(const std::string& label) const;
  /// Throws UsageError for unknown labels.
  std::size_t require(const std::string& label) const;
  bool ranked() const;

 private:
  std::vector<PhyloTree> trees_;
  std::vector<std::string> species_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// div(c, d) predates div(a, b): M_cd < M_ab.
struct Predates {
  std::string c, d, a, b;
};

/// lo <= M_ab <= hi.
struct DateBounds {
  std::string a, b;
  int lo = 0, hi = 0;
};

using SideConstraint = std::variant<Predates, DateBounds>;

struct PostedAtom {
  Atom atom;
  std::vector<std::size_t> sources;  // indices of the input trees producing it
};

/// Variables and generated relations for one enclosing taxon.
struct NestedTaxon {
  std::string name;
  VarId var;
  /// Species pairs (i < j) with v <= M_ij.
  std::set<std::pair<std::string, std::string>> at_most;
  /// (descendant, non-descendant) pairs with M_ij < v.
  std::set<std::pair<std::string, std::string>> strictly_above;
  std::vector<std::string> descendants;
};

struct ModelOptions {
  BreakupMode mode = BreakupMode::Hard;
  bool post_atoms = true;
};

/// The ultrametric matrix model of a forest: one matrix variable per
/// species pair, a single matrix propagator, atom and side constraints.
class SupertreeModel {
 public:
  SupertreeModel(const Forest& forest, ModelOptions options, const std::vector<SideConstraint>& sides = {});
  SupertreeModel(const SupertreeModel&) = delete;
  SupertreeModel& operator=(const SupertreeModel&) = delete;

  const Forest& forest() const { return forest_; }
  Engine& engine() { return engine_; }
  const Engine& engine() const { return engine_; }
  const MrcaMatrix& matrix() const { return matrix_; }
  int max_depth() const { return max_depth_; }

  /// Deduplicated breakup atoms of all trees in input order.
  const std::vector<PostedAtom>& atoms() const { return atoms_; }
  /// Posts the atom's primitive relations; throws UsageError for unknown species.
  void post_atom(const Atom& atom);
  void post_side(const SideConstraint& side);
  /// Assigns M_ij := rank(mrca(i, j)) for every ranked mrca in `tree`.
  void apply_ranks(const PhyloTree& tree);
  /// Adds one variable per enclosing taxon with the containment relations.
  void apply_nested_taxa();

  const std::vector<NestedTaxon>& nested() const { return nested_; }
  std::size_t side_posts() const { return side_posts_; }
  VarId cell(const std::string& a, const std::string& b) const;

  /// Matrix of current lower bounds (diagonal 0).
  IntMatrix lb_matrix() const;

 private:
  const Forest& forest_;
  Engine engine_;
  int max_depth_ = 0;
  MrcaMatrix matrix_;
  std::vector<PostedAtom> atoms_;
  std::vector<NestedTaxon> nested_;
  std::size_t side_posts_ = 0;
};

std::unique_ptr<SupertreeModel> build_model(const Forest& forest, BreakupMode mode,
                                            const std::vector<SideConstraint>& sides = {});

struct BuildResult {
  std::optional<PhyloTree> tree;  // empty when incompatible
  RunStats stats;
};

/// Propagates to fixpoint and reads the tree from the lower bounds.
BuildResult cp_build(SupertreeModel& model);

/// Whether `tau` holds in every supertree of a compatible forest. Throws
/// UsageError if the forest is incompatible or `tau` names unknown species.
bool necessity(const Forest& forest, const Atom& tau, BreakupMode mode = BreakupMode::Hard,
               const std::vector<SideConstraint>& sides = {});

/// The three other resolutions of the atom's species.
std::vector<Atom> alternatives(const Atom& tau);

struct GreedyReport {
  std::vector<Atom> accepted;
  std::vector<Atom> rejected;
  /// Rejected atoms the output tree does not display.
  std::vector<Atom> violated;
};

struct GreedyResult {
  PhyloTree tree;
  GreedyReport report;
  RunStats stats;
};

/// Adds atoms one at a time in input order, dropping each one whose
/// addition fails propagation.
GreedyResult greedy_build(const Forest& forest, BreakupMode mode = BreakupMode::Hard);

struct ConflictCore {
  std::vector<Atom> atoms;
  std::size_t probes = 0;
};

/// Minimal failing subset of the breakup atoms (QuickXplain). Throws
/// UsageError when the forest is compatible.
ConflictCore explain_conflict(const Forest& forest, BreakupMode mode = BreakupMode::Hard,
                              const std::vector<SideConstraint>& sides = {});

/// Replaces leaf occurrences of enclosing taxa with a copy of a subtree
/// rooted at that taxon elsewhere in the forest. Throws UsageError on
/// contradictions (cyclic or label-clashing substitutions).
std::vector<PhyloTree> nested_preprocess(const std::vector<PhyloTree>& trees);

/// Labels the output tree's mrca(desc(l)) with each enclosing taxon l and
/// checks perfect display of every input. Empty when that check fails.
std::optional<PhyloTree> attach_labels(const PhyloTree& tree, const SupertreeModel& model);

/// All distinct topologies (up to `limit`) reachable by depth-first search
/// over the matrix cells, lower bounds tried first.
std::vector<PhyloTree> enumerate_supertrees(SupertreeModel& model, std::size_t limit);

}  // namespace umt

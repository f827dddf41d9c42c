#include "umt/supertree.hpp"

#include <algorithm>
#include <future>
#include <unordered_set>

#include "umt/errors.hpp"
#include "umt/relations.hpp"

namespace umt {

Forest::Forest(std::vector<PhyloTree> trees) : trees_(std::move(trees)) {
  std::set<std::string> all;
  for (const auto& t : trees_) {
    t.validate();
    for (auto& l : t.leaf_labels()) all.insert(std::move(l));
  }
  species_.assign(all.begin(), all.end());
  for (std::size_t i = 0; i < species_.size(); ++i) index_.emplace(species_[i], i);
}

std::optional<std::size_t> Forest::index(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Forest::require(const std::string& label) const {
  if (auto i = index(label)) return *i;
  throw UsageError("unknown species '" + label + "'");
}

bool Forest::ranked() const {
  return std::any_of(trees_.begin(), trees_.end(), [](const PhyloTree& t) { return t.has_ranks(); });
}

namespace {

int deepest_rank(const Forest& f) {
  int r = 0;
  for (const auto& t : f.trees())
    for (auto v : t.preorder())
      if (t.node(v).rank) r = std::max(r, *t.node(v).rank);
  return r;
}

}  // namespace

SupertreeModel::SupertreeModel(const Forest& forest, ModelOptions options, const std::vector<SideConstraint>& sides)
    : forest_(forest) {
  const auto n = forest.size();
  if (n == 0) throw UsageError("empty forest");
  max_depth_ = std::max({static_cast<int>(n) - 1, deepest_rank(forest), 1});
  matrix_ = MrcaMatrix(engine_, n, max_depth_);
  if (n >= 3) post_um_matrix(engine_, matrix_);

  std::map<Atom, std::size_t> seen;
  for (std::size_t t = 0; t < forest.trees().size(); ++t) {
    for (auto& a : breakup(forest.trees()[t], options.mode)) {
      const auto [it, fresh] = seen.emplace(a, atoms_.size());
      if (fresh) {
        atoms_.push_back({std::move(a), {t}});
      } else if (atoms_[it->second].sources.back() != t) {
        atoms_[it->second].sources.push_back(t);
      }
    }
  }
  if (options.post_atoms) {
    for (const auto& a : atoms_) post_atom(a.atom);
  }
  for (const auto& t : forest.trees())
    if (t.has_ranks()) apply_ranks(t);
  for (const auto& s : sides) post_side(s);
  if (std::any_of(forest.trees().begin(), forest.trees().end(),
                  [](const PhyloTree& t) { return t.has_internal_labels(); })) {
    apply_nested_taxa();
  }
}

VarId SupertreeModel::cell(const std::string& a, const std::string& b) const {
  const auto i = forest_.require(a);
  const auto j = forest_.require(b);
  if (i == j) throw UsageError("a matrix cell needs two distinct species");
  return matrix_.cell(i, j);
}

void SupertreeModel::post_atom(const Atom& atom) {
  if (const auto* t = std::get_if<Triple>(&atom)) {
    post_triple(engine_, matrix_, forest_.require(t->a), forest_.require(t->b), forest_.require(t->c));
  } else {
    const auto& f = std::get<Fan>(atom);
    post_fan(engine_, matrix_, forest_.require(f.v[0]), forest_.require(f.v[1]), forest_.require(f.v[2]));
  }
}

void SupertreeModel::post_side(const SideConstraint& side) {
  if (const auto* p = std::get_if<Predates>(&side)) {
    const auto before = engine_.propagator_count();
    post_lt(engine_, cell(p->c, p->d), cell(p->a, p->b));
    side_posts_ += engine_.propagator_count() - before;
    return;
  }
  const auto& d = std::get<DateBounds>(side);
  const auto v = cell(d.a, d.b);
  engine_.store().tighten_lb(v, d.lo);
  engine_.store().tighten_ub(v, d.hi);
}

void SupertreeModel::apply_ranks(const PhyloTree& tree) {
  const auto leaves = tree.leaves();
  auto& store = engine_.store();
  for (std::size_t a = 0; a < leaves.size(); ++a) {
    for (std::size_t b = a + 1; b < leaves.size(); ++b) {
      const auto m = tree.mrca(leaves[a], leaves[b]);
      if (!tree.node(m).rank) continue;
      store.assign(cell(tree.node(leaves[a]).label, tree.node(leaves[b]).label), *tree.node(m).rank);
    }
  }
}

void SupertreeModel::apply_nested_taxa() {
  std::map<std::string, NestedTaxon> taxa;
  for (const auto& t : forest_.trees()) {
    for (auto v : t.preorder()) {
      if (t.is_leaf(v) || t.node(v).label.empty()) continue;
      const auto& name = t.node(v).label;
      if (forest_.index(name)) throw UsageError("taxon '" + name + "' is also a leaf; preprocess the forest first");
      auto& taxon = taxa[name];
      taxon.name = name;
      const auto below = t.leaf_labels_below(v);
      std::set<std::string> inside(below.begin(), below.end());
      for (const auto& i : below) {
        taxon.descendants.push_back(i);
        for (const auto& j : t.leaf_labels())
          if (!inside.count(j)) taxon.strictly_above.emplace(i, j);
      }
    }
  }
  for (auto& [name, taxon] : taxa) {
    auto& d = taxon.descendants;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    for (std::size_t a = 0; a < d.size(); ++a)
      for (std::size_t b = a + 1; b < d.size(); ++b) taxon.at_most.emplace(d[a], d[b]);

    taxon.var = engine_.new_var(1, max_depth_);
    const auto before = engine_.propagator_count();
    for (const auto& [i, j] : taxon.at_most) post_le(engine_, taxon.var, cell(i, j));
    for (const auto& [i, j] : taxon.strictly_above) post_lt(engine_, cell(i, j), taxon.var);
    side_posts_ += engine_.propagator_count() - before;
    nested_.push_back(std::move(taxon));
  }
}

IntMatrix SupertreeModel::lb_matrix() const {
  IntMatrix m(forest_.species());
  const auto n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, engine_.store().lb(matrix_.cell(i, j)));
  return m;
}

std::unique_ptr<SupertreeModel> build_model(const Forest& forest, BreakupMode mode,
                                            const std::vector<SideConstraint>& sides) {
  return std::make_unique<SupertreeModel>(forest, ModelOptions{mode, true}, sides);
}

BuildResult cp_build(SupertreeModel& model) {
  BuildResult out;
  if (model.engine().propagate() == PropagateResult::Fixpoint) {
    out.tree = matrix_to_tree(model.lb_matrix(), model.forest().ranked());
  }
  out.stats = model.engine().stats();
  return out;
}

std::vector<Atom> alternatives(const Atom& tau) {
  const auto s = species_of(tau);
  std::vector<Atom> all{make_triple(s[0], s[1], s[2]), make_triple(s[0], s[2], s[1]), make_triple(s[1], s[2], s[0]),
                        make_fan(s[0], s[1], s[2])};
  std::vector<Atom> out;
  for (auto& a : all)
    if (!(a == tau)) out.push_back(std::move(a));
  return out;
}

bool necessity(const Forest& forest, const Atom& tau, BreakupMode mode, const std::vector<SideConstraint>& sides) {
  for (const auto& s : species_of(tau)) forest.require(s);
  {
    SupertreeModel base(forest, {mode, true}, sides);
    if (base.engine().propagate() == PropagateResult::Failure) {
      throw UsageError("necessity requires a compatible forest");
    }
  }
  auto branch_fails = [&](const Atom& alt) {
    SupertreeModel m(forest, {mode, true}, sides);
    m.post_atom(alt);
    return m.engine().propagate() == PropagateResult::Failure;
  };
  std::vector<std::future<bool>> branches;
  for (const auto& alt : alternatives(tau)) branches.push_back(std::async(std::launch::async, branch_fails, alt));
  bool necessary = true;
  for (auto& b : branches) necessary = b.get() && necessary;
  return necessary;
}

GreedyResult greedy_build(const Forest& forest, BreakupMode mode) {
  SupertreeModel model(forest, {mode, false});
  auto& engine = model.engine();
  GreedyResult out;
  engine.propagate();
  for (const auto& posted : model.atoms()) {
    const auto cp = engine.checkpoint();
    model.post_atom(posted.atom);
    if (engine.propagate() == PropagateResult::Failure) {
      engine.restore(cp);
      out.report.rejected.push_back(posted.atom);
    } else {
      engine.release(cp);
      out.report.accepted.push_back(posted.atom);
    }
  }
  out.tree = matrix_to_tree(model.lb_matrix());
  for (const auto& a : out.report.rejected)
    if (!tree_displays_atom(out.tree, a)) out.report.violated.push_back(a);
  out.stats = engine.stats();
  return out;
}

namespace {

class QuickXplain {
 public:
  QuickXplain(SupertreeModel& model, std::size_t& probes) : model_(model), probes_(probes) {}

  bool consistent(const std::vector<std::size_t>& atoms) {
    ++probes_;
    auto& engine = model_.engine();
    const auto cp = engine.checkpoint();
    for (auto i : atoms) model_.post_atom(model_.atoms()[i].atom);
    const bool ok = engine.propagate() == PropagateResult::Fixpoint;
    engine.restore(cp);
    return ok;
  }

  std::vector<std::size_t> run(const std::vector<std::size_t>& background, bool delta,
                               const std::vector<std::size_t>& candidates) {
    if (delta && !consistent(background)) return {};
    if (candidates.size() == 1) return candidates;
    const auto mid = candidates.begin() + static_cast<std::ptrdiff_t>(candidates.size() / 2);
    const std::vector<std::size_t> first(candidates.begin(), mid), second(mid, candidates.end());
    const auto d2 = run(join(background, first), !first.empty(), second);
    auto d1 = run(join(background, d2), !d2.empty(), first);
    return join(d1, d2);
  }

 private:
  static std::vector<std::size_t> join(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  SupertreeModel& model_;
  std::size_t& probes_;
};

}  // namespace

ConflictCore explain_conflict(const Forest& forest, BreakupMode mode, const std::vector<SideConstraint>& sides) {
  SupertreeModel model(forest, {mode, false}, sides);
  ConflictCore out;
  QuickXplain qx(model, out.probes);
  std::vector<std::size_t> all(model.atoms().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (qx.consistent(all)) throw UsageError("explain_conflict: the forest is compatible");
  if (all.empty() || !qx.consistent({})) return out;
  auto core = qx.run({}, false, all);
  std::sort(core.begin(), core.end());
  for (auto i : core) out.atoms.push_back(model.atoms()[i].atom);
  return out;
}

namespace {

void copy_subtree(const PhyloTree& src, NodeId v, PhyloTree& dst, NodeId parent) {
  const auto id = dst.add_node(parent, src.node(v).label, src.node(v).rank);
  for (auto c : src.children(v)) copy_subtree(src, c, dst, id);
}

// Copy of `t` with leaf `leaf` replaced by the subtree of `src` rooted at `at`.
PhyloTree substitute(const PhyloTree& t, NodeId leaf, const PhyloTree& src, NodeId at) {
  PhyloTree out;
  struct Frame {
    NodeId v;
    NodeId parent;
  };
  std::vector<Frame> stack{{t.root(), kNoNode}};
  while (!stack.empty()) {
    const auto [v, parent] = stack.back();
    stack.pop_back();
    if (v == leaf) {
      copy_subtree(src, at, out, parent);
      continue;
    }
    const auto id = out.add_node(parent, t.node(v).label, t.node(v).rank);
    const auto& ch = t.children(v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back({*it, id});
  }
  return out;
}

}  // namespace

std::vector<PhyloTree> nested_preprocess(const std::vector<PhyloTree>& trees) {
  // First internal occurrence of each enclosing taxon.
  std::map<std::string, std::pair<std::size_t, NodeId>> source;
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (auto v : trees[i].preorder())
      if (!trees[i].is_leaf(v) && !trees[i].node(v).label.empty()) source.emplace(trees[i].node(v).label, std::make_pair(i, v));

  std::vector<PhyloTree> out = trees;
  for (auto& t : out) {
    while (true) {
      std::optional<NodeId> hit;
      for (auto v : t.leaves())
        if (source.count(t.node(v).label)) {
          hit = v;
          break;
        }
      if (!hit) break;
      const auto& [tree_index, node] = source.at(t.node(*hit).label);
      t = substitute(t, *hit, trees[tree_index], node);
      try {
        t.validate();
      } catch (const UsageError& e) {
        throw UsageError(std::string("contradictory enclosing taxa: ") + e.what());
      }
    }
  }
  return out;
}

std::optional<PhyloTree> attach_labels(const PhyloTree& tree, const SupertreeModel& model) {
  PhyloTree out = tree;
  for (const auto& taxon : model.nested()) {
    NodeId at = kNoNode;
    for (const auto& d : taxon.descendants) {
      const auto leaf = out.find(d);
      if (!leaf) return std::nullopt;
      at = at == kNoNode ? *leaf : out.mrca(at, *leaf);
    }
    if (at == kNoNode || out.is_leaf(at) || !out.node(at).label.empty()) return std::nullopt;
    out.set_label(at, taxon.name);
  }
  for (const auto& input : model.forest().trees())
    if (!perfectly_displays(out, input)) return std::nullopt;
  return out;
}

std::vector<PhyloTree> enumerate_supertrees(SupertreeModel& model, std::size_t limit) {
  auto& engine = model.engine();
  const auto& m = model.matrix();
  std::vector<PhyloTree> out;
  std::set<std::string> seen;
  const auto top = engine.checkpoint();

  std::function<void()> dfs = [&] {
    ++engine.stats().search_nodes;
    if (engine.propagate() == PropagateResult::Failure) return;
    const auto& store = engine.store();
    std::optional<VarId> pick;
    int width = 0;
    for (std::size_t c = 0; c < m.cell_count(); ++c) {
      const VarId v{m.first_var() + static_cast<std::uint32_t>(c)};
      const int w = store.ub(v) - store.lb(v);
      if (w > 0 && (!pick || w < width)) {
        pick = v;
        width = w;
      }
    }
    if (!pick) {
      auto tree = matrix_to_tree(model.lb_matrix());
      if (seen.insert(canonical_form(tree, {false, false})).second) out.push_back(std::move(tree));
      return;
    }
    const int lo = store.lb(*pick), hi = store.ub(*pick);
    for (int val = lo; val <= hi && out.size() < limit; ++val) {
      const auto cp = engine.checkpoint();
      engine.store().assign(*pick, val);
      dfs();
      engine.restore(cp);
    }
  };
  if (limit > 0) dfs();
  engine.restore(top);
  return out;
}

}  // namespace umt

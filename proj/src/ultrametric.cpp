#include "umt/ultrametric.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace umt {

namespace {

struct Ref {
  VarId var;
  int key;
};

// Sorts three (var, key) pairs by key, ties broken by variable index.
void sort3(std::array<Ref, 3>& r) {
  auto less = [](const Ref& a, const Ref& b) {
    return a.key != b.key ? a.key < b.key : a.var.index < b.var.index;
  };
  if (less(r[1], r[0])) std::swap(r[0], r[1]);
  if (less(r[2], r[1])) std::swap(r[1], r[2]);
  if (less(r[1], r[0])) std::swap(r[0], r[1]);
}

int singletons(const Store& s, VarId x, VarId y, VarId z) {
  return int(s.fixed(x)) + int(s.fixed(y)) + int(s.fixed(z));
}

}  // namespace

void lb_fix(Store& store, VarId x, VarId y, VarId z) {
  std::array<Ref, 3> r{{{x, store.lb(x)}, {y, store.lb(y)}, {z, store.lb(z)}}};
  sort3(r);
  const auto& [s, m, l] = r;
  if (s.key < m.key) store.tighten_lb(s.var, m.key);
}

void ub_fix(Store& store, VarId x, VarId y, VarId z) {
  std::array<Ref, 3> r{{{x, store.ub(x)}, {y, store.ub(y)}, {z, store.ub(z)}}};
  sort3(r);
  const auto& [s, m, l] = r;
  if (!(s.key < m.key)) return;
  const int s_lb = store.lb(s.var);
  // S and L have disjoint bounds: L cannot tie with S, so M must.
  if (std::max(s_lb, store.lb(l.var)) > std::min(s.key, l.key)) {
    store.tighten_ub(m.var, s.key);
  } else if (std::max(s_lb, store.lb(m.var)) > std::min(s.key, m.key)) {
    store.tighten_ub(l.var, s.key);
  }
}

WakeResult um3_wake(Store& store, VarId x, VarId y, VarId z, EventSet events) {
  if (events.has(Event::Min) || events.has(Event::Fix)) {
    lb_fix(store, x, y, z);
    if (!store.failed()) ub_fix(store, x, y, z);
  } else if (events.has(Event::Max)) {
    ub_fix(store, x, y, z);
  }
  if (store.failed()) return WakeResult::Failed;
  return singletons(store, x, y, z) >= 2 ? WakeResult::Entailed : WakeResult::Progress;
}

Um3Propagator::Um3Propagator(VarId x, VarId y, VarId z) : x_(x), y_(y), z_(z) {
  if (x == y || y == z || x == z) throw std::invalid_argument("um3: variables must be distinct");
}

WakeResult Um3Propagator::initial(Store& store) {
  return um3_wake(store, x_, y_, z_, Event::Min | Event::Max);
}

WakeResult Um3Propagator::wake(Store& store, VarId, EventSet events) {
  return um3_wake(store, x_, y_, z_, events);
}

MrcaMatrix::MrcaMatrix(Engine& engine, std::size_t n, int max_depth) : n_(n) {
  if (max_depth < 0) max_depth = static_cast<int>(n) - 1;
  first_ = static_cast<std::uint32_t>(engine.store().size());
  if (n < 2) return;
  cells_.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      engine.new_var(1, max_depth);
      cells_.emplace_back(i, j);
    }
  }
}

VarId MrcaMatrix::cell(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  // Row-major upper triangle without the diagonal.
  const auto offset = i * (2 * n_ - i - 1) / 2 + (j - i - 1);
  return VarId{first_ + static_cast<std::uint32_t>(offset)};
}

void UmMatrixPropagator::sweep(Store& store, std::uint32_t i, std::uint32_t j, EventSet events) {
  const bool lower = events.has(Event::Min) || events.has(Event::Fix);
  const VarId ij = m_.cell(i, j);
  for (std::uint32_t k = 0; k < m_.size(); ++k) {
    if (k == i || k == j) continue;
    const VarId ik = m_.cell(i, k);
    const VarId jk = m_.cell(j, k);
    ++applications_;
    if (lower) {
      // Min handler followed by the Max handler.
      um3_wake(store, ij, ik, jk, Event::Min);
      if (store.failed()) return;
    }
    um3_wake(store, ij, ik, jk, Event::Max);
    if (store.failed()) return;
  }
}

WakeResult UmMatrixPropagator::initial(Store& store) {
  for (std::uint32_t i = 0; i < m_.size(); ++i) {
    for (std::uint32_t j = i + 1; j < m_.size(); ++j) {
      sweep(store, i, j, Event::Min | Event::Max);
      if (store.failed()) return WakeResult::Failed;
    }
  }
  return WakeResult::Progress;
}

WakeResult UmMatrixPropagator::wake(Store& store, VarId var, EventSet events) {
  const auto [i, j] = m_.index_of(var);
  sweep(store, i, j, events);
  return store.failed() ? WakeResult::Failed : WakeResult::Progress;
}

std::vector<VarId> UmMatrixPropagator::watched() const {
  std::vector<VarId> out;
  out.reserve(m_.cell_count());
  for (std::uint32_t c = 0; c < m_.cell_count(); ++c) out.push_back(VarId{m_.first_var() + c});
  return out;
}

PropagatorId post_um3(Engine& engine, VarId x, VarId y, VarId z) {
  return engine.emplace<Um3Propagator>(x, y, z);
}

PropagatorId post_um_matrix(Engine& engine, const MrcaMatrix& matrix) {
  return engine.emplace<UmMatrixPropagator>(matrix);
}

void post_um_matrix_decomposed(Engine& engine, const MrcaMatrix& matrix) {
  const auto n = matrix.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        post_um3(engine, matrix.cell(i, j), matrix.cell(i, k), matrix.cell(j, k));
}

namespace {

struct Box3 {
  std::array<IntervalDomain, 3> d;
  bool ok = true;
};

// Bounds-narrowed boxes of `d[big] > d[a] = d[b]`.
Box3 narrow_strict(std::array<IntervalDomain, 3> d, int big, int a, int b) {
  IntervalDomain e = intersect(d[a], d[b]);
  IntervalDomain g = d[big];
  g.lb = std::max(g.lb, e.lb + 1);
  e.ub = std::min(e.ub, g.ub - 1);
  Box3 out;
  out.ok = e.lb <= e.ub && g.lb <= g.ub;
  d[big] = g;
  d[a] = e;
  d[b] = e;
  out.d = d;
  return out;
}

Box3 narrow_equal(std::array<IntervalDomain, 3> d) {
  const auto e = intersect(intersect(d[0], d[1]), d[2]);
  return {{e, e, e}, e.lb <= e.ub};
}

}  // namespace

WakeResult DelayedDisjunctionUm3::run(Store& store) {
  const std::array<VarId, 3> vars{x_, y_, z_};
  const std::array<IntervalDomain, 3> d{store.domain(x_), store.domain(y_), store.domain(z_)};
  const std::array<Box3, 4> disjuncts{narrow_strict(d, 0, 1, 2), narrow_strict(d, 1, 0, 2),
                                      narrow_strict(d, 2, 0, 1), narrow_equal(d)};
  int feasible = 0;
  const Box3* only = nullptr;
  for (const auto& b : disjuncts) {
    if (b.ok) {
      ++feasible;
      only = &b;
    }
  }
  if (feasible == 0) {
    store.fail();
    return WakeResult::Failed;
  }
  if (feasible == 1) {
    for (int t = 0; t < 3; ++t) {
      store.tighten_lb(vars[t], only->d[t].lb);
      store.tighten_ub(vars[t], only->d[t].ub);
    }
  }
  return store.failed() ? WakeResult::Failed : WakeResult::Progress;
}

PropagatorId post_delayed_disjunction_um3(Engine& engine, VarId x, VarId y, VarId z) {
  return engine.emplace<DelayedDisjunctionUm3>(x, y, z);
}

}  // namespace umt

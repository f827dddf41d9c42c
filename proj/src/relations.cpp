#include "umt/relations.hpp"

#include <algorithm>
#include <climits>

namespace umt {

WakeResult LtPropagator::run(Store& s) {
  s.tighten_lb(b_, s.lb(a_) + 1);
  s.tighten_ub(a_, s.ub(b_) - 1);
  if (s.failed()) return WakeResult::Failed;
  return s.ub(a_) < s.lb(b_) ? WakeResult::Entailed : WakeResult::Progress;
}

WakeResult LePropagator::run(Store& s) {
  s.tighten_lb(b_, s.lb(a_));
  s.tighten_ub(a_, s.ub(b_));
  if (s.failed()) return WakeResult::Failed;
  return s.ub(a_) <= s.lb(b_) ? WakeResult::Entailed : WakeResult::Progress;
}

WakeResult EqPropagator::run(Store& s) {
  int lo = INT_MIN;
  int hi = INT_MAX;
  for (auto v : vars_) {
    lo = std::max(lo, s.lb(v));
    hi = std::min(hi, s.ub(v));
  }
  if (lo > hi) {
    s.fail();
    return WakeResult::Failed;
  }
  for (auto v : vars_) {
    s.tighten_lb(v, lo);
    s.tighten_ub(v, hi);
  }
  if (s.failed()) return WakeResult::Failed;
  return lo == hi ? WakeResult::Entailed : WakeResult::Progress;
}

void post_lt(Engine& engine, VarId a, VarId b) {
  if (a == b) {
    engine.store().fail();
    return;
  }
  engine.emplace<LtPropagator>(a, b);
}

void post_le(Engine& engine, VarId a, VarId b) {
  if (a == b) return;
  engine.emplace<LePropagator>(a, b);
}

void post_eq2(Engine& engine, VarId a, VarId b) {
  if (a == b) return;
  engine.emplace<EqPropagator>(std::vector<VarId>{a, b});
}

void post_eq3(Engine& engine, VarId a, VarId b, VarId c) {
  engine.emplace<EqPropagator>(std::vector<VarId>{a, b, c});
}

void post_triple(Engine& engine, const MrcaMatrix& m, std::size_t i, std::size_t j, std::size_t k) {
  post_lt(engine, m.cell(i, k), m.cell(i, j));
  post_eq2(engine, m.cell(i, k), m.cell(j, k));
}

void post_fan(Engine& engine, const MrcaMatrix& m, std::size_t i, std::size_t j, std::size_t k) {
  post_eq3(engine, m.cell(i, j), m.cell(i, k), m.cell(j, k));
}

}  // namespace umt

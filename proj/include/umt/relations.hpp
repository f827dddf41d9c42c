#pragma once

#include <vector>

#include "umt/engine.hpp"
#include "umt/ultrametric.hpp"

namespace umt {

/// a < b on the bounds.
class LtPropagator final : public Propagator {
 public:
  LtPropagator(VarId a, VarId b) : a_(a), b_(b) {}
  WakeResult initial(Store& s) override { return run(s); }
  WakeResult wake(Store& s, VarId, EventSet) override { return run(s); }
  std::vector<VarId> watched() const override { return {a_, b_}; }
  const char* name() const override { return "lt"; }

 private:
  WakeResult run(Store& s);
  VarId a_, b_;
};

/// a <= b on the bounds.
class LePropagator final : public Propagator {
 public:
  LePropagator(VarId a, VarId b) : a_(a), b_(b) {}
  WakeResult initial(Store& s) override { return run(s); }
  WakeResult wake(Store& s, VarId, EventSet) override { return run(s); }
  std::vector<VarId> watched() const override { return {a_, b_}; }
  const char* name() const override { return "le"; }

 private:
  WakeResult run(Store& s);
  VarId a_, b_;
};

/// All listed variables equal; intersects their bounds.
class EqPropagator final : public Propagator {
 public:
  explicit EqPropagator(std::vector<VarId> vars) : vars_(std::move(vars)) {}
  WakeResult initial(Store& s) override { return run(s); }
  WakeResult wake(Store& s, VarId, EventSet) override { return run(s); }
  std::vector<VarId> watched() const override { return vars_; }
  const char* name() const override { return "eq"; }

 private:
  WakeResult run(Store& s);
  std::vector<VarId> vars_;
};

// Posting the same variable on both sides of a strict relation fails the
// store immediately; no propagator is registered in that case.
void post_lt(Engine& engine, VarId a, VarId b);
void post_le(Engine& engine, VarId a, VarId b);
void post_eq2(Engine& engine, VarId a, VarId b);
void post_eq3(Engine& engine, VarId a, VarId b, VarId c);

/// Triple (ij)k over species indices: M_ik < M_ij and M_ik = M_jk.
void post_triple(Engine& engine, const MrcaMatrix& m, std::size_t i, std::size_t j, std::size_t k);
/// Fan (ijk): M_ij = M_ik = M_jk.
void post_fan(Engine& engine, const MrcaMatrix& m, std::size_t i, std::size_t j, std::size_t k);

}  // namespace umt

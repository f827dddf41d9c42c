#pragma once

#include <cstdint>
#include <vector>

#include "umt/engine.hpp"

namespace umt {

/// Raise the strictly smallest lower bound of three variables to the middle one.
void lb_fix(Store& store, VarId x, VarId y, VarId z);

/// Trim the upper bound that no ultrametric tuple in the three boxes supports.
void ub_fix(Store& store, VarId x, VarId y, VarId z);

/// Bounds(Z) propagation of the three-variable ultrametric constraint for
/// one coalesced event set. Reports Entailed once two domains are singletons.
WakeResult um3_wake(Store& store, VarId x, VarId y, VarId z, EventSet events);

class Um3Propagator final : public Propagator {
 public:
  Um3Propagator(VarId x, VarId y, VarId z);

  WakeResult initial(Store& store) override;
  WakeResult wake(Store& store, VarId var, EventSet events) override;
  std::vector<VarId> watched() const override { return {x_, y_, z_}; }
  const char* name() const override { return "um3"; }

 private:
  VarId x_, y_, z_;
};

/// Symmetric n x n matrix of depth variables with a constant-zero diagonal.
class MrcaMatrix {
 public:
  MrcaMatrix() = default;
  /// Creates n(n-1)/2 variables with domain [1, max_depth] (max_depth defaults to n-1).
  MrcaMatrix(Engine& engine, std::size_t n, int max_depth = -1);

  std::size_t size() const { return n_; }
  /// Variable for cell {i, j}; i != j.
  VarId cell(std::size_t i, std::size_t j) const;
  bool is_cell(VarId v) const { return n_ > 1 && v.index >= first_ && v.index < first_ + cells_.size(); }
  std::pair<std::uint32_t, std::uint32_t> index_of(VarId v) const { return cells_[v.index - first_]; }
  std::size_t cell_count() const { return cells_.size(); }
  std::uint32_t first_var() const { return first_; }

  /// Current value of cell {i, j}'s lower bound; 0 on the diagonal.
  int lb(const Store& store, std::size_t i, std::size_t j) const {
    return i == j ? 0 : store.lb(cell(i, j));
  }

 private:
  std::size_t n_ = 0;
  std::uint32_t first_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cells_;
};

/// One propagator enforcing the ultrametric property over a whole matrix.
///
/// An event on cell (i, j) walks every third index k and runs the three
/// variable propagation on (M_ij, M_ik, M_jk); no per-triple records exist.
class UmMatrixPropagator final : public Propagator {
 public:
  explicit UmMatrixPropagator(const MrcaMatrix& matrix) : m_(matrix) {}

  WakeResult initial(Store& store) override;
  WakeResult wake(Store& store, VarId var, EventSet events) override;
  std::vector<VarId> watched() const override;
  const char* name() const override { return "um-matrix"; }

  std::uint64_t um3_applications() const { return applications_; }

 private:
  void sweep(Store& store, std::uint32_t i, std::uint32_t j, EventSet events);

  MrcaMatrix m_;
  std::uint64_t applications_ = 0;
};

PropagatorId post_um3(Engine& engine, VarId x, VarId y, VarId z);
PropagatorId post_um_matrix(Engine& engine, const MrcaMatrix& matrix);
/// Posts one Um3Propagator per index triple (C(n,3) of them).
void post_um_matrix_decomposed(Engine& engine, const MrcaMatrix& matrix);

/// Weak propagator for the ultrametric disjunction: it only narrows once a
/// single disjunct remains feasible on the bounds, and fails when none does.
class DelayedDisjunctionUm3 final : public Propagator {
 public:
  DelayedDisjunctionUm3(VarId x, VarId y, VarId z) : x_(x), y_(y), z_(z) {}

  WakeResult initial(Store& store) override { return run(store); }
  WakeResult wake(Store& store, VarId, EventSet) override { return run(store); }
  std::vector<VarId> watched() const override { return {x_, y_, z_}; }
  const char* name() const override { return "um3-delayed-disjunction"; }

 private:
  WakeResult run(Store& store);
  VarId x_, y_, z_;
};

PropagatorId post_delayed_disjunction_um3(Engine& engine, VarId x, VarId y, VarId z);

}  // namespace umt

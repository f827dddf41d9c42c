#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "umt/store.hpp"

namespace umt {

enum class WakeResult { Progress, Entailed, Failed };

/// A propagation method attached to some variables.
///
/// `wake` is called once per (variable, coalesced events) pair that reached
/// the propagator; it may only narrow domains. `initial` runs when the
/// propagator is registered.
class Propagator {
 public:
  virtual ~Propagator() = default;

  virtual WakeResult initial(Store& store) = 0;
  virtual WakeResult wake(Store& store, VarId var, EventSet events) = 0;
  virtual std::vector<VarId> watched() const = 0;
  virtual const char* name() const = 0;
};

using PropagatorId = std::uint32_t;

struct RunStats {
  std::uint64_t wakes = 0;
  std::uint64_t search_nodes = 0;
  std::uint64_t failures = 0;
  std::uint64_t peak_vars = 0;
  std::uint64_t peak_propagators = 0;
};

enum class PropagateResult { Fixpoint, Failure };

/// Work that was queued but not yet run when a checkpoint was taken.
struct PendingWork {
  PropagatorId id = 0;
  bool initial = false;
  std::vector<std::pair<VarId, EventSet>> events;
};

/// Engine checkpoint: store checkpoint plus registration/entailment marks.
/// Checkpoints taken at a fixpoint carry no pending work.
struct EngineCheckpoint {
  Checkpoint store;
  std::size_t propagators = 0;
  std::size_t entailed_trail = 0;
  std::vector<PendingWork> pending;
};

/// Event-driven propagation to fixpoint over a Store the engine owns.
///
/// Pending work is kept per propagator: a propagator sits in the queue at
/// most once, with one coalesced event set per variable that changed since
/// it was last run. Changes made inside a wake are dispatched when that wake
/// returns, including back to the propagator that made them.
class Engine {
 public:
  Engine() = default;
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  Store& store() { return store_; }
  const Store& store() const { return store_; }

  VarId new_var(int lb, int ub);

  PropagatorId post(std::unique_ptr<Propagator> p);

  template <class P, class... Args>
  PropagatorId emplace(Args&&... args) {
    return post(std::make_unique<P>(std::forward<Args>(args)...));
  }

  PropagateResult propagate();

  EngineCheckpoint checkpoint();
  void restore(const EngineCheckpoint& cp);
  void release(const EngineCheckpoint& cp);

  std::size_t propagator_count() const { return props_.size(); }
  const Propagator& propagator(PropagatorId id) const { return *props_[id].prop; }
  bool entailed(PropagatorId id) const { return props_[id].entailed; }
  std::uint64_t wakes_of(PropagatorId id) const { return props_[id].wakes; }

  RunStats& stats() { return stats_; }
  const RunStats& stats() const { return stats_; }

  /// Pick pending propagators in random order instead of FIFO.
  void shuffle_queue(std::uint64_t seed) { shuffle_.emplace(seed); }

 private:
  struct Pending {
    VarId var;
    EventSet events;
  };
  struct Slot {
    std::unique_ptr<Propagator> prop;
    std::vector<VarId> watched;
    std::vector<Pending> pending;
    // For wide propagators: 1 + position of each variable in `pending`, 0 if absent.
    std::vector<std::uint32_t> dense_pos;
    bool needs_initial = false;
    bool queued = false;
    bool entailed = false;
    std::uint64_t wakes = 0;
  };

  void dispatch();
  void enqueue(PropagatorId id);
  void add_pending(Slot& s, VarId v, EventSet ev);
  void clear_queue();
  void mark_entailed(PropagatorId id);
  void note_peaks();

  Store store_;
  std::vector<Slot> props_;
  std::vector<std::vector<PropagatorId>> subscribers_;
  std::vector<PropagatorId> queue_;
  std::size_t queue_head_ = 0;
  std::vector<PropagatorId> entailed_trail_;
  std::optional<std::mt19937_64> shuffle_;
  RunStats stats_;
};

}  // namespace umt

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace umt {

/// Handle to an integer variable owned by a Store.
struct VarId {
  std::uint32_t index = 0;

  friend bool operator==(VarId, VarId) = default;
  friend auto operator<=>(VarId, VarId) = default;
};

enum class Event : std::uint8_t { Min = 1, Max = 2, Fix = 4 };

/// Small bit set of domain events raised by a single mutation.
class EventSet {
 public:
  constexpr EventSet() = default;
  constexpr EventSet(Event e) : bits_(static_cast<std::uint8_t>(e)) {}

  constexpr bool has(Event e) const { return (bits_ & static_cast<std::uint8_t>(e)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }

  constexpr EventSet& operator|=(EventSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  friend constexpr EventSet operator|(EventSet a, EventSet b) { return a |= b; }
  friend constexpr bool operator==(EventSet, EventSet) = default;

  static constexpr EventSet all() { return EventSet(Event::Min) | Event::Max | Event::Fix; }

 private:
  std::uint8_t bits_ = 0;
};

constexpr EventSet operator|(Event a, Event b) { return EventSet(a) | EventSet(b); }

struct IntervalDomain {
  int lb = 0;
  int ub = 0;

  bool fixed() const { return lb == ub; }
  bool contains(int v) const { return lb <= v && v <= ub; }
  friend bool operator==(const IntervalDomain&, const IntervalDomain&) = default;
};

/// Bounded intersection of two interval domains; empty when lb > ub.
inline IntervalDomain intersect(IntervalDomain a, IntervalDomain b) {
  return {a.lb > b.lb ? a.lb : b.lb, a.ub < b.ub ? a.ub : b.ub};
}

/// Opaque marker returned by Store::checkpoint().
struct Checkpoint {
  std::uint32_t level = 0;
  std::uint64_t serial = 0;
};

/// Raised on misuse of the store API (bad bounds, stale checkpoints).
class StoreError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Interval-domain variables with trailed, LIFO checkpoint/restore.
///
/// Failure is a flag: the mutation that would empty a domain leaves the
/// domain untouched and marks the whole store failed. Once failed, every
/// mutation is a no-op reporting no events until a restore clears the flag.
///
/// Every successful mutation is appended to a change log (variable plus
/// raised events) which the propagation engine drains.
class Store {
 public:
  struct Change {
    VarId var;
    EventSet events;
  };

  struct AccessCounters {
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;
  };

  VarId new_var(int lb, int ub);

  std::size_t size() const { return domains_.size(); }

  int lb(VarId v) const {
    ++counters_.reads;
    return domains_[v.index].lb;
  }
  int ub(VarId v) const {
    ++counters_.reads;
    return domains_[v.index].ub;
  }
  IntervalDomain domain(VarId v) const {
    counters_.reads += 2;
    return domains_[v.index];
  }
  bool fixed(VarId v) const { return domains_[v.index].fixed(); }
  bool failed() const { return failed_; }

  EventSet tighten_lb(VarId v, int val);
  EventSet tighten_ub(VarId v, int val);
  EventSet assign(VarId v, int val);

  /// Marks the store failed without touching any domain.
  void fail() { failed_ = true; }

  Checkpoint checkpoint();
  /// Undo everything since `cp`; checkpoints above `cp` are discarded too.
  void restore(Checkpoint cp);
  /// Forget `cp` (and anything above it) while keeping the current state.
  void release(Checkpoint cp);
  std::size_t checkpoint_depth() const { return marks_.size(); }

  std::vector<Change>& changes() { return changes_; }

  const AccessCounters& counters() const { return counters_; }
  void reset_counters() { counters_ = {}; }

 private:
  struct TrailEntry {
    VarId var;
    IntervalDomain old;
  };
  struct Mark {
    std::size_t trail_size;
    bool failed;
    std::uint64_t serial;
  };

  void save(VarId v);
  std::size_t find_mark(Checkpoint cp) const;

  std::vector<IntervalDomain> domains_;
  // Serial of the checkpoint under which each variable was last trailed.
  std::vector<std::uint64_t> saved_serial_;
  std::vector<TrailEntry> trail_;
  std::vector<Mark> marks_;
  std::vector<Change> changes_;
  std::uint64_t next_serial_ = 1;
  bool failed_ = false;
  mutable AccessCounters counters_;
};

}  // namespace umt

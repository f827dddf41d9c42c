#include "umt/store.hpp"

#include <string>

namespace umt {

VarId Store::new_var(int lb, int ub) {
  if (lb > ub) {
    throw StoreError("new_var: empty domain [" + std::to_string(lb) + ", " + std::to_string(ub) + "]");
  }
  domains_.push_back({lb, ub});
  saved_serial_.push_back(0);
  return VarId{static_cast<std::uint32_t>(domains_.size() - 1)};
}

void Store::save(VarId v) {
  if (marks_.empty()) return;
  const auto serial = marks_.back().serial;
  if (saved_serial_[v.index] == serial) return;
  saved_serial_[v.index] = serial;
  trail_.push_back({v, domains_[v.index]});
}

EventSet Store::tighten_lb(VarId v, int val) {
  if (failed_) return {};
  auto& d = domains_[v.index];
  ++counters_.reads;
  if (val <= d.lb) return {};
  if (val > d.ub) {
    failed_ = true;
    return {};
  }
  save(v);
  ++counters_.writes;
  d.lb = val;
  EventSet ev = Event::Min;
  if (d.lb == d.ub) ev |= Event::Fix;
  changes_.push_back({v, ev});
  return ev;
}

EventSet Store::tighten_ub(VarId v, int val) {
  if (failed_) return {};
  auto& d = domains_[v.index];
  ++counters_.reads;
  if (val >= d.ub) return {};
  if (val < d.lb) {
    failed_ = true;
    return {};
  }
  save(v);
  ++counters_.writes;
  d.ub = val;
  EventSet ev = Event::Max;
  if (d.lb == d.ub) ev |= Event::Fix;
  changes_.push_back({v, ev});
  return ev;
}

EventSet Store::assign(VarId v, int val) {
  EventSet ev = tighten_lb(v, val);
  ev |= tighten_ub(v, val);
  if (failed_) return {};
  return ev;
}

Checkpoint Store::checkpoint() {
  const auto serial = next_serial_++;
  marks_.push_back({trail_.size(), failed_, serial});
  return Checkpoint{static_cast<std::uint32_t>(marks_.size()), serial};
}

std::size_t Store::find_mark(Checkpoint cp) const {
  if (cp.level == 0 || cp.level > marks_.size() || marks_[cp.level - 1].serial != cp.serial) {
    throw StoreError("stale or foreign checkpoint");
  }
  return cp.level - 1;
}

void Store::restore(Checkpoint cp) {
  const auto at = find_mark(cp);
  const auto& mark = marks_[at];
  while (trail_.size() > mark.trail_size) {
    const auto& e = trail_.back();
    domains_[e.var.index] = e.old;
    trail_.pop_back();
  }
  failed_ = mark.failed;
  marks_.resize(at);
  changes_.clear();
}

void Store::release(Checkpoint cp) {
  marks_.resize(find_mark(cp));
}

}  // namespace umt

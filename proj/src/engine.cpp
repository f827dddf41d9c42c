#include "umt/engine.hpp"

#include <algorithm>
#include <utility>

namespace umt {

namespace {
constexpr std::size_t kDenseThreshold = 8;
}

VarId Engine::new_var(int lb, int ub) {
  const auto v = store_.new_var(lb, ub);
  subscribers_.resize(store_.size());
  note_peaks();
  return v;
}

void Engine::note_peaks() {
  stats_.peak_vars = std::max<std::uint64_t>(stats_.peak_vars, store_.size());
  stats_.peak_propagators = std::max<std::uint64_t>(stats_.peak_propagators, props_.size());
}

PropagatorId Engine::post(std::unique_ptr<Propagator> p) {
  const auto id = static_cast<PropagatorId>(props_.size());
  Slot slot;
  slot.watched = p->watched();
  slot.prop = std::move(p);
  subscribers_.resize(store_.size());
  for (auto v : slot.watched) subscribers_[v.index].push_back(id);
  if (slot.watched.size() > kDenseThreshold) slot.dense_pos.assign(store_.size(), 0);
  props_.push_back(std::move(slot));
  note_peaks();
  if (!store_.failed()) {
    props_[id].needs_initial = true;
    enqueue(id);
  }
  return id;
}

void Engine::enqueue(PropagatorId id) {
  auto& s = props_[id];
  if (s.queued || s.entailed) return;
  s.queued = true;
  queue_.push_back(id);
}

void Engine::add_pending(Slot& s, VarId v, EventSet ev) {
  if (!s.dense_pos.empty()) {
    if (v.index >= s.dense_pos.size()) s.dense_pos.resize(store_.size(), 0);
    auto& pos = s.dense_pos[v.index];
    if (pos != 0) {
      s.pending[pos - 1].events |= ev;
    } else {
      s.pending.push_back({v, ev});
      pos = static_cast<std::uint32_t>(s.pending.size());
    }
    return;
  }
  for (auto& p : s.pending) {
    if (p.var == v) {
      p.events |= ev;
      return;
    }
  }
  s.pending.push_back({v, ev});
}

void Engine::dispatch() {
  auto& changes = store_.changes();
  for (const auto& c : changes) {
    for (auto id : subscribers_[c.var.index]) {
      auto& s = props_[id];
      if (s.entailed) continue;
      add_pending(s, c.var, c.events);
      enqueue(id);
    }
  }
  changes.clear();
}

void Engine::mark_entailed(PropagatorId id) {
  auto& s = props_[id];
  if (s.entailed) return;
  s.entailed = true;
  entailed_trail_.push_back(id);
}

void Engine::clear_queue() {
  for (auto id : queue_) {
    auto& s = props_[id];
    s.queued = false;
    s.needs_initial = false;
    for (const auto& p : s.pending) {
      if (!s.dense_pos.empty()) s.dense_pos[p.var.index] = 0;
    }
    s.pending.clear();
  }
  queue_.clear();
  queue_head_ = 0;
}

PropagateResult Engine::propagate() {
  dispatch();
  std::vector<Pending> work;
  while (!store_.failed() && queue_head_ < queue_.size()) {
    if (shuffle_ && queue_.size() - queue_head_ > 1) {
      const auto span = queue_.size() - queue_head_;
      const auto pick = queue_head_ + static_cast<std::size_t>((*shuffle_)() % span);
      std::swap(queue_[queue_head_], queue_[pick]);
    }
    const auto id = queue_[queue_head_++];
    if (queue_head_ > 1024 && queue_head_ * 2 > queue_.size()) {
      queue_.erase(queue_.begin(), queue_.begin() + static_cast<std::ptrdiff_t>(queue_head_));
      queue_head_ = 0;
    }
    auto& slot = props_[id];
    slot.queued = false;
    if (slot.entailed) continue;

    work.clear();
    work.swap(slot.pending);
    if (!slot.dense_pos.empty()) {
      for (const auto& p : work) slot.dense_pos[p.var.index] = 0;
    }

    auto run = [&](auto&& step) {
      ++stats_.wakes;
      ++props_[id].wakes;
      const auto r = step();
      if (r == WakeResult::Entailed) mark_entailed(id);
      dispatch();
      return r;
    };

    if (slot.needs_initial) {
      slot.needs_initial = false;
      const auto r = run([&] { return props_[id].prop->initial(store_); });
      // The initial pass already saw every current bound.
      if (r != WakeResult::Progress || store_.failed()) continue;
      work.clear();
    }
    for (const auto& p : work) {
      if (store_.failed() || props_[id].entailed) break;
      run([&] { return props_[id].prop->wake(store_, p.var, p.events); });
    }
  }
  if (store_.failed()) {
    clear_queue();
    store_.changes().clear();
    ++stats_.failures;
    return PropagateResult::Failure;
  }
  queue_.clear();
  queue_head_ = 0;
  return PropagateResult::Fixpoint;
}

EngineCheckpoint Engine::checkpoint() {
  if (!store_.failed()) dispatch();
  EngineCheckpoint cp{store_.checkpoint(), props_.size(), entailed_trail_.size(), {}};
  for (auto i = queue_head_; i < queue_.size(); ++i) {
    const auto& s = props_[queue_[i]];
    PendingWork w{queue_[i], s.needs_initial, {}};
    for (const auto& p : s.pending) w.events.emplace_back(p.var, p.events);
    cp.pending.push_back(std::move(w));
  }
  return cp;
}

void Engine::restore(const EngineCheckpoint& cp) {
  store_.restore(cp.store);
  clear_queue();
  while (entailed_trail_.size() > cp.entailed_trail) {
    props_[entailed_trail_.back()].entailed = false;
    entailed_trail_.pop_back();
  }
  while (props_.size() > cp.propagators) {
    const auto id = static_cast<PropagatorId>(props_.size() - 1);
    for (auto v : props_.back().watched) {
      auto& subs = subscribers_[v.index];
      if (!subs.empty() && subs.back() == id) subs.pop_back();
    }
    props_.pop_back();
  }
  for (const auto& w : cp.pending) {
    auto& s = props_[w.id];
    s.needs_initial = w.initial;
    for (const auto& [v, ev] : w.events) add_pending(s, v, ev);
    enqueue(w.id);
  }
}

void Engine::release(const EngineCheckpoint& cp) { store_.release(cp.store); }

}  // namespace umt

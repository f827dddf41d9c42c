#include <doctest.h>

#include <random>

#include "umt/engine.hpp"
#include "umt/relations.hpp"
#include "umt/ultrametric.hpp"

using namespace umt;

namespace {

// Counts wakes and narrows nothing.
class Spy final : public Propagator {
 public:
  explicit Spy(VarId v) : v_(v) {}
  WakeResult initial(Store&) override { return WakeResult::Progress; }
  WakeResult wake(Store&, VarId, EventSet ev) override {
    ++calls;
    seen |= ev;
    return WakeResult::Progress;
  }
  std::vector<VarId> watched() const override { return {v_}; }
  const char* name() const override { return "spy"; }
  int calls = 0;
  EventSet seen;

 private:
  VarId v_;
};

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("equality intersects bounds") {
  Engine e;
  auto x = e.new_var(1, 4), y = e.new_var(2, 6);
  post_eq2(e, x, y);
  CHECK(e.propagate() == PropagateResult::Fixpoint);
  CHECK(e.store().domain(x) == IntervalDomain{2, 4});
  CHECK(e.store().domain(y) == IntervalDomain{2, 4});
}

TEST_CASE("posting on a failed store reports failure") {
  Engine e;
  auto x = e.new_var(1, 4), y = e.new_var(1, 4);
  e.store().fail();
  post_eq2(e, x, y);
  CHECK(e.propagate() == PropagateResult::Failure);
}

TEST_CASE("every subscriber hears a variable's events, coalesced") {
  Engine e;
  auto x = e.new_var(1, 9);
  auto* a = new Spy(x);
  auto* b = new Spy(x);
  e.post(std::unique_ptr<Propagator>(a));
  e.post(std::unique_ptr<Propagator>(b));
  e.propagate();
  e.store().tighten_lb(x, 2);
  e.store().tighten_ub(x, 2);
  e.propagate();
  CHECK(a->calls == 1);
  CHECK(b->calls == 1);
  CHECK(a->seen == (Event::Min | Event::Max | Event::Fix));
}

TEST_CASE("an empty constraint set is already at fixpoint") {
  Engine e;
  auto x = e.new_var(1, 4);
  CHECK(e.propagate() == PropagateResult::Fixpoint);
  CHECK(e.store().domain(x) == IntervalDomain{1, 4});
}

TEST_CASE("the incompatible triple pair fails") {
  Engine e;
  MrcaMatrix m(e, 3);
  post_um_matrix(e, m);
  post_triple(e, m, 0, 1, 2);
  post_triple(e, m, 0, 2, 1);
  CHECK(e.propagate() == PropagateResult::Failure);
  CHECK(e.stats().failures == 1);
}

TEST_CASE("ultrametric triple prunes the lone small lower bound") {
  Engine e;
  auto x = e.new_var(1, 3), y = e.new_var(2, 3), z = e.new_var(3, 3);
  post_um3(e, x, y, z);
  CHECK(e.propagate() == PropagateResult::Fixpoint);
  CHECK(e.store().domain(x) == IntervalDomain{2, 3});
  CHECK(e.store().domain(y) == IntervalDomain{2, 3});
  CHECK(e.store().domain(z) == IntervalDomain{3, 3});
}

TEST_CASE("entailed propagators are not woken again") {
  Engine e;
  auto x = e.new_var(5, 5), y = e.new_var(5, 5), z = e.new_var(3, 9);
  auto id = post_um3(e, x, y, z);
  e.propagate();
  CHECK(e.entailed(id));
  const auto before = e.wakes_of(id);
  e.store().tighten_ub(z, 7);
  e.propagate();
  CHECK(e.wakes_of(id) == before);

  SUBCASE("restore revives the propagator") {
    Engine f;
    auto a = f.new_var(1, 9), b = f.new_var(1, 9), c = f.new_var(1, 9);
    auto pid = post_um3(f, a, b, c);
    f.propagate();
    auto cp = f.checkpoint();
    f.store().assign(a, 4);
    f.store().assign(b, 4);
    f.propagate();
    CHECK(f.entailed(pid));
    f.restore(cp);
    CHECK_FALSE(f.entailed(pid));
  }
}

TEST_CASE("restore removes propagators posted after the checkpoint") {
  Engine e;
  auto x = e.new_var(1, 4), y = e.new_var(1, 4);
  auto cp = e.checkpoint();
  post_lt(e, x, y);
  CHECK(e.propagator_count() == 1);
  e.propagate();
  e.restore(cp);
  CHECK(e.propagator_count() == 0);
  e.store().tighten_lb(y, 1);
  CHECK(e.propagate() == PropagateResult::Fixpoint);
  CHECK(e.store().domain(x) == IntervalDomain{1, 4});
}

TEST_CASE("restore brings back work queued before the checkpoint") {
  Engine e;
  auto x = e.new_var(1, 4), y = e.new_var(1, 4);
  post_lt(e, x, y);
  auto cp = e.checkpoint();
  CHECK(e.propagate() == PropagateResult::Fixpoint);
  e.restore(cp);
  CHECK(e.store().domain(y) == IntervalDomain{1, 4});
  CHECK(e.propagate() == PropagateResult::Fixpoint);
  CHECK(e.store().domain(y) == IntervalDomain{2, 4});

  e.store().tighten_lb(x, 2);
  auto cp2 = e.checkpoint();
  e.propagate();
  e.restore(cp2);
  e.propagate();
  CHECK(e.store().domain(y) == IntervalDomain{3, 4});
}

TEST_CASE("propagation is idempotent and order independent") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 60; ++round) {
    const std::uint64_t seed = rng();
    auto build = [&](Engine& e) {
      std::mt19937_64 r(seed);
      MrcaMatrix m(e, 6);
      post_um_matrix(e, m);
      for (int k = 0; k < 4; ++k) {
        std::array<std::size_t, 6> p{0, 1, 2, 3, 4, 5};
        std::shuffle(p.begin(), p.end(), r);
        if (r() % 5 == 0) post_fan(e, m, p[0], p[1], p[2]);
        else post_triple(e, m, p[0], p[1], p[2]);
      }
      return m;
    };
    Engine a, b;
    auto ma = build(a);
    auto mb = build(b);
    b.shuffle_queue(seed ^ 0x9e37);
    const auto ra = a.propagate();
    const auto rb = b.propagate();
    REQUIRE(ra == rb);
    if (ra == PropagateResult::Failure) continue;
    for (std::size_t c = 0; c < ma.cell_count(); ++c) {
      const VarId v{ma.first_var() + std::uint32_t(c)};
      CHECK(a.store().domain(v) == b.store().domain(v));
    }
    const auto wakes = a.stats().wakes;
    CHECK(a.propagate() == PropagateResult::Fixpoint);
    CHECK(a.stats().wakes == wakes);
  }
}

TEST_CASE("peak statistics") {
  Engine e;
  MrcaMatrix m(e, 5);
  post_um_matrix(e, m);
  e.propagate();
  CHECK(e.stats().peak_vars == 10);
  CHECK(e.stats().peak_propagators == 1);
}

}

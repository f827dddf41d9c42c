#include <doctest.h>

#include "umt/store.hpp"

using namespace umt;

TEST_SUITE("store") {

TEST_CASE("new variables carry their initial interval") {
  Store s;
  const auto v = s.new_var(1, 4);
  CHECK(s.domain(v) == IntervalDomain{1, 4});
  const auto diag = s.new_var(0, 0);
  CHECK(s.fixed(diag));
  const int n = 5;
  CHECK(s.domain(s.new_var(1, n - 1)) == IntervalDomain{1, 4});
  CHECK_THROWS_AS(s.new_var(3, 2), StoreError);
}

TEST_CASE("tighten_lb reports Min and Fix") {
  Store s;
  auto v = s.new_var(1, 4);
  CHECK(s.tighten_lb(v, 2) == EventSet(Event::Min));
  CHECK(s.domain(v) == IntervalDomain{2, 4});
  CHECK(s.tighten_lb(v, 2).empty());
  CHECK(s.tighten_lb(v, 1).empty());
  CHECK(s.tighten_lb(v, 4) == (Event::Min | Event::Fix));
  CHECK(s.domain(v) == IntervalDomain{4, 4});

  Store t;
  auto w = t.new_var(1, 4);
  CHECK(t.tighten_lb(w, 5).empty());
  CHECK(t.failed());
  CHECK(t.domain(w) == IntervalDomain{1, 4});
}

TEST_CASE("tighten_ub reports Max and Fix") {
  Store s;
  auto v = s.new_var(1, 4);
  CHECK(s.tighten_ub(v, 2) == EventSet(Event::Max));
  CHECK(s.domain(v) == IntervalDomain{1, 2});
  CHECK(s.tighten_ub(v, 1) == (Event::Max | Event::Fix));

  Store t;
  auto w = t.new_var(2, 4);
  t.tighten_ub(w, 1);
  CHECK(t.failed());
}

TEST_CASE("assign") {
  Store s;
  auto v = s.new_var(1, 4);
  CHECK(s.assign(v, 3) == (Event::Min | Event::Max | Event::Fix));
  CHECK(s.assign(v, 3).empty());
  CHECK_FALSE(s.failed());
  auto w = s.new_var(1, 2);
  s.assign(w, 4);
  CHECK(s.failed());
}

TEST_CASE("mutations on a failed store are no-ops") {
  Store s;
  auto v = s.new_var(1, 4);
  s.fail();
  CHECK(s.tighten_lb(v, 2).empty());
  CHECK(s.domain(v) == IntervalDomain{1, 4});
}

TEST_CASE("change log records each mutation") {
  Store s;
  auto v = s.new_var(1, 4);
  s.tighten_lb(v, 2);
  s.tighten_ub(v, 2);
  REQUIRE(s.changes().size() == 2);
  CHECK(s.changes()[0].events == EventSet(Event::Min));
  CHECK(s.changes()[1].events == (Event::Max | Event::Fix));
}

TEST_CASE("checkpoint and restore") {
  Store s;
  auto v = s.new_var(1, 4);
  auto w = s.new_var(1, 9);

  SUBCASE("single layer") {
    auto cp = s.checkpoint();
    s.tighten_lb(v, 3);
    s.tighten_lb(v, 4);
    s.restore(cp);
    CHECK(s.domain(v) == IntervalDomain{1, 4});
    CHECK(s.checkpoint_depth() == 0);
  }
  SUBCASE("failure flag is cleared") {
    auto cp = s.checkpoint();
    s.tighten_lb(v, 7);
    CHECK(s.failed());
    s.restore(cp);
    CHECK_FALSE(s.failed());
  }
  SUBCASE("nested layers") {
    auto cp1 = s.checkpoint();
    s.tighten_lb(v, 2);
    auto cp2 = s.checkpoint();
    s.tighten_lb(v, 3);
    s.tighten_ub(w, 5);
    s.restore(cp2);
    CHECK(s.domain(v) == IntervalDomain{2, 4});
    CHECK(s.domain(w) == IntervalDomain{1, 9});
    s.restore(cp1);
    CHECK(s.domain(v) == IntervalDomain{1, 4});
  }
  SUBCASE("restoring an outer checkpoint discards inner ones") {
    auto cp1 = s.checkpoint();
    auto cp2 = s.checkpoint();
    s.tighten_lb(v, 3);
    s.restore(cp1);
    CHECK(s.domain(v) == IntervalDomain{1, 4});
    CHECK_THROWS_AS(s.restore(cp2), StoreError);
  }
  SUBCASE("release keeps the state") {
    auto cp1 = s.checkpoint();
    s.tighten_lb(v, 2);
    auto cp2 = s.checkpoint();
    s.tighten_lb(v, 3);
    s.release(cp2);
    CHECK(s.domain(v) == IntervalDomain{3, 4});
    s.restore(cp1);
    CHECK(s.domain(v) == IntervalDomain{1, 4});
  }
  SUBCASE("reused levels still trail correctly") {
    auto cp = s.checkpoint();
    s.tighten_lb(v, 2);
    s.restore(cp);
    auto cp2 = s.checkpoint();
    s.tighten_lb(v, 3);
    s.restore(cp2);
    CHECK(s.domain(v) == IntervalDomain{1, 4});
  }
}

TEST_CASE("access counters") {
  Store s;
  auto v = s.new_var(1, 4);
  s.reset_counters();
  (void)s.lb(v);
  (void)s.ub(v);
  CHECK(s.counters().reads == 2);
  s.tighten_lb(v, 2);
  CHECK(s.counters().writes >= 1);
}

}

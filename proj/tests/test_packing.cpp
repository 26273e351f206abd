#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "thop/bounds.hpp"
#include "thop/packing.hpp"

using namespace thop;
using test::make_instance;
using test::route_of;

TEST_CASE("single item that fits is picked") {
  const Instance inst = make_instance({{0, 0}, {10, 0}, {20, 0}}, {{7, 3, 1}}, 5, 100);
  Rng rng(1);
  const PackingPlan plan = pack(inst, route_of({0, 1, 2}), PackingParams{}, rng);
  CHECK(plan.total_profit() == 7);
}

TEST_CASE("single item that breaks the time limit is skipped") {
  // Empty trip takes 20; carrying the item the second leg takes 100.
  const Instance inst = make_instance({{0, 0}, {10, 0}, {20, 0}}, {{7, 5, 1}}, 5, 50);
  Rng rng(1);
  const PackingPlan plan = pack(inst, route_of({0, 1, 2}), PackingParams{3, {}, 0.2}, rng);
  CHECK(plan.total_profit() == 0);
  CHECK(plan.picked_items().empty());
}

TEST_CASE("zero-profit items are never picked") {
  const Instance inst = make_instance({{0, 0}, {10, 0}, {20, 0}}, {{0, 1, 1}, {4, 1, 1}}, 5, 100);
  const PackingPlan plan = pack_deterministic(inst, route_of({0, 1, 2}), {});
  CHECK_FALSE(plan.picked(0));
  CHECK(plan.picked(1));
}

TEST_CASE("mutually exclusive items: best single item on most seeds") {
  const Instance inst =
      make_instance({{0, 0}, {10, 0}, {20, 0}}, {{10, 6, 1}, {7, 5, 1}}, 8, 1000);
  const Route r = route_of({0, 1, 2});
  const auto oracle = brute_force_solve(inst);
  REQUIRE(oracle);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const PackingPlan plan = pack(inst, r, PackingParams{5, {}, 0.2}, rng);
    if (plan.total_profit() == oracle->plan.total_profit()) ++hits;
  }
  CHECK(hits >= 90);
}

TEST_CASE("deterministic packing") {
  Rng rng(4);
  const Instance inst = test::random_benchmark_like(rng, 20, 3, 0.8);
  const Route r = test::random_route(rng, inst);
  const PackingPlan a = pack_deterministic(inst, r, {});
  CHECK(pack_deterministic(inst, r, {}) == a);
  for (int ptries : {1, 3, 7}) {
    Rng s(static_cast<std::uint64_t>(ptries));
    CHECK(pack(inst, r, PackingParams{ptries, {}, 0.0}, s) == a);
  }
}

TEST_CASE("exponents (1,1,0) follow profit density") {
  // Five items at one city; capacity only. Density order picks the first three.
  const Instance inst = make_instance(
      {{0, 0}, {10, 0}, {20, 0}},
      {{10, 2, 1}, {9, 3, 1}, {8, 4, 1}, {3, 3, 1}, {1, 5, 1}}, 10, 1e6, 0.1, 1.0);
  const Route r = route_of({0, 1, 2});
  const PackingPlan plan = pack_deterministic(inst, r, {1, 1, 0});
  CHECK(plan.picked_items() == std::vector<ItemId>{0, 1, 2});

  // Oracle: every one of the 32 subsets.
  std::int64_t best = 0;
  for (unsigned mask = 0; mask < 32; ++mask) {
    PackingPlan p(5);
    for (ItemId k = 0; k < 5; ++k) {
      if (mask & (1u << k)) p.pick(inst.item(k));
    }
    if (evaluate(inst, r, p).feasible) best = std::max(best, p.total_profit());
  }
  CHECK(plan.total_profit() == best);
}

TEST_CASE("packing prefers items late on the route when distance matters") {
  // Equal items at cities 2 and 3, room for one: the later one travels less.
  const Instance inst = make_instance({{0, 0}, {10, 0}, {20, 0}, {30, 0}},
                                      {{5, 5, 1}, {5, 5, 2}}, 5, 1000);
  const PackingPlan plan = pack_deterministic(inst, route_of({0, 1, 2, 3}), {});
  CHECK(plan.picked(1));
  CHECK_FALSE(plan.picked(0));
}

TEST_CASE("ties go to the lower item id") {
  const Instance inst = make_instance({{0, 0}, {10, 0}, {20, 0}}, {{5, 5, 1}, {5, 5, 1}}, 5, 1000);
  const PackingPlan plan = pack_deterministic(inst, route_of({0, 1, 2}), {});
  CHECK(plan.picked(0));
  CHECK_FALSE(plan.picked(1));
}

TEST_CASE("pack output is feasible and only uses routed cities") {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = test::random_benchmark_like(rng, 25, 3, uniform(rng, 0.1, 1.5));
    const Route r = test::random_route(rng, inst);
    const PackingPlan plan = pack(inst, r, PackingParams{3, {}, 0.3}, rng);
    if (!evaluate(inst, r, PackingPlan(inst.num_items())).feasible) {
      CHECK(plan.picked_items().empty());
      continue;
    }
    CHECK_NOTHROW(evaluate(inst, r, plan, true));
  }
}

TEST_CASE("more attempts never hurt for the same seed") {
  Rng gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = test::random_benchmark_like(gen, 25, 3, 0.6);
    const Route r = test::random_route(gen, inst);
    std::int64_t previous = -1;
    for (int k = 1; k <= 6; ++k) {
      Rng rng(static_cast<std::uint64_t>(trial));
      const std::int64_t p = pack(inst, r, PackingParams{k, {}, 0.5}, rng).total_profit();
      CHECK(p >= previous);
      previous = p;
    }
  }
}

TEST_CASE("orienteering mode packs every item on the route") {
  Rng rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = to_op_instance(test::random_benchmark_like(rng, 20, 2, 20.0));
    const Route r = test::random_route(rng, inst);
    const PackingPlan plan = pack(inst, r, PackingParams{}, rng);
    std::int64_t on_route = 0;
    for (CityId c : r.cities) {
      for (ItemId k : inst.items_at(c)) on_route += inst.item(k).profit;
    }
    CHECK(plan.total_profit() == on_route);
  }
}

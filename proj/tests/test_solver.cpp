#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "support.hpp"
#include "thop/error.hpp"
#include "thop/solver.hpp"

using namespace thop;
using test::make_instance;
using test::route_of;

namespace {

SolverConfig quick_config(std::uint64_t seed = 1) {
  SolverConfig cfg;
  cfg.seed = seed;
  cfg.aco.ants = 20;
  cfg.deterministic = true;
  cfg.max_iterations = 30;
  return cfg;
}

}  // namespace

TEST_CASE("default budget is a tenth of a second per item, rounded up") {
  Rng rng(1);
  CHECK(default_time_budget(test::random_benchmark_like(rng, 51, 5)) == 25.0);   // m = 245
  CHECK(default_time_budget(test::random_benchmark_like(rng, 51, 10)) == 49.0);  // m = 490
  CHECK(default_time_budget(make_instance({{0, 0}, {1, 0}, {2, 0}}, {{1, 1, 1}}, 1, 10)) == 1.0);
}

TEST_CASE("no feasible route when the direct trip is too long") {
  const Instance inst = make_instance({{0, 0}, {5, 0}, {100, 0}}, {{1, 1, 1}}, 10, 40, 1.0, 2.0);
  const SolveResult r = solve(inst, quick_config());
  CHECK(r.status == SolveStatus::no_feasible_route);
}

TEST_CASE("instances without items return the direct route") {
  const Instance inst = make_instance({{0, 0}, {5, 0}, {10, 0}}, {}, 10, 50);
  const SolveResult r = solve(inst, quick_config());
  CHECK(r.status == SolveStatus::ok);
  CHECK(r.best.route.cities == std::vector<CityId>{0, 2});
  CHECK(r.best.plan.total_profit() == 0);
}

TEST_CASE("tiny instance: solver matches the exhaustive optimum") {
  Rng rng(2);
  int matched = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = test::random_tiny_instance(rng, 6, 5);
    const auto oracle = brute_force_solve(inst);
    REQUIRE(oracle);
    SolverConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial) + 1;
    cfg.time_budget_s = 0.3;
    const SolveResult r = solve(inst, cfg);
    REQUIRE(r.status == SolveStatus::ok);
    CHECK(r.best.plan.total_profit() <= oracle->plan.total_profit());
    if (r.best.plan.total_profit() == oracle->plan.total_profit()) ++matched;
  }
  CHECK(matched >= 9);
}

TEST_CASE("pruning") {
  const Instance inst = make_instance(
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}, {7, 0}},
      {{1, 1, 2}, {1, 1, 4}, {1, 1, 6}}, 10, 100);
  PackingPlan at5(3);
  at5.pick(inst.item(1));
  CHECK(prune_route(inst, route_of({0, 2, 4, 6, 7}), at5).cities ==
        std::vector<CityId>{0, 4, 7});
  CHECK(prune_route(inst, route_of({0, 2, 4, 6, 7}), PackingPlan(3)).cities ==
        std::vector<CityId>{0, 7});
}

TEST_CASE("pruning never increases travel time under the triangle inequality") {
  Rng rng(3);
  const Instance inst = test::random_benchmark_like(rng, 51, 3, 2.0, "eil51_like");
  REQUIRE(inst.triangle_inequality());
  for (int trial = 0; trial < 50; ++trial) {
    const Route r = test::random_route(rng, inst);
    const PackingPlan plan = test::random_plan(rng, inst, r);
    const Route pruned = prune_route(inst, r, plan);
    CHECK(travel_time(inst, pruned, plan) <= travel_time(inst, r, plan));
    CHECK(evaluate(inst, pruned, plan).profit == plan.total_profit());
  }
}

TEST_CASE("pruning is disabled without the triangle inequality") {
  // CEIL_2D distances always satisfy it, so this only exercises the flag's
  // default: a metric instance prunes.
  const Instance inst = make_instance({{0, 0}, {1, 0}, {2, 0}}, {{1, 1, 1}}, 10, 100);
  CHECK(inst.triangle_inequality());
  CHECK(prune_route(inst, route_of({0, 1, 2}), PackingPlan(1)).size() == 2);
}

TEST_CASE("solver output is feasible, bounded and logged monotonically") {
  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const Instance inst = test::random_benchmark_like(rng, 30, 2, 0.4);
    SolverConfig cfg = quick_config(static_cast<std::uint64_t>(trial));
    cfg.aco.local_search = static_cast<LocalSearch>(trial % 4);
    const SolveResult r = solve(inst, cfg);
    REQUIRE(r.status == SolveStatus::ok);
    CHECK_NOTHROW(evaluate(inst, r.best.route, r.best.plan, true));
    CHECK(r.evaluation.profit == r.best.plan.total_profit());
    CHECK(static_cast<double>(r.best.plan.total_profit()) <= r.upper_bound.value);
    std::int64_t last = -1;
    for (const LogRecord& rec : r.log.records) {
      CHECK(rec.best_profit >= last);
      CHECK(static_cast<double>(rec.best_profit) <= r.upper_bound.value);
      last = rec.best_profit;
    }
    CHECK(last == r.best.plan.total_profit());
    CHECK(r.best.route == prune_route(inst, r.best.route, r.best.plan));
  }
}

TEST_CASE("deterministic mode is reproducible and independent of threads") {
  Rng rng(5);
  const Instance inst = test::random_benchmark_like(rng, 40, 2, 0.4);
  SolverConfig cfg = quick_config(42);
  cfg.aco.local_search = LocalSearch::two_opt;
  const SolveResult a = solve(inst, cfg);
  const SolveResult b = solve(inst, cfg);
  CHECK(a.best == b.best);
  CHECK(write_run_log(inst, cfg, a) == write_run_log(inst, cfg, b));

  SolverConfig threaded = cfg;
  threaded.threads = 4;
  const SolveResult c = solve(inst, threaded);
  CHECK(c.best == a.best);
  CHECK(c.log.records.size() == a.log.records.size());
}

TEST_CASE("time budget stops the run") {
  Rng rng(6);
  const Instance inst = test::random_benchmark_like(rng, 60, 3, 0.4);
  SolverConfig cfg;
  cfg.time_budget_s = 0.3;
  const SolveResult r = solve(inst, cfg);
  CHECK(r.log.elapsed_s >= 0.3);
  CHECK(r.log.elapsed_s < 2.0);
  CHECK(r.log.iterations > 0);
}

TEST_CASE("run log is JSON lines") {
  Rng rng(7);
  const Instance inst = test::random_benchmark_like(rng, 20, 2, 0.4);
  SolverConfig cfg = quick_config(3);
  const SolveResult r = solve(inst, cfg);
  std::istringstream lines(write_run_log(inst, cfg, r));
  std::string line;
  std::vector<nlohmann::json> events;
  while (std::getline(lines, line)) events.push_back(nlohmann::json::parse(line));
  REQUIRE(events.size() >= 3);
  CHECK(events.front()["event"] == "start");
  CHECK(events.back()["event"] == "final");
  CHECK(events.back()["profit"] == r.best.plan.total_profit());
  CHECK_FALSE(events.back().contains("elapsed_s"));
  CHECK(events.back()["route"].front() == 1);
}

TEST_CASE("invalid configurations are rejected") {
  const Instance inst = make_instance({{0, 0}, {5, 0}, {10, 0}}, {{1, 1, 1}}, 10, 50);
  SolverConfig cfg;
  cfg.aco.ants = 0;
  CHECK_THROWS_AS(solve(inst, cfg), Error);
  cfg = SolverConfig{};
  cfg.aco.rho = 1.5;
  CHECK_THROWS_AS(solve(inst, cfg), Error);
  cfg = SolverConfig{};
  cfg.deterministic = true;
  CHECK_THROWS_AS(solve(inst, cfg), Error);
  cfg = SolverConfig{};
  cfg.time_budget_s = 0.0;
  CHECK_THROWS_AS(solve(inst, cfg), Error);
}

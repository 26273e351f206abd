#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "thop/aco.hpp"
#include "thop/bounds.hpp"
#include "thop/evaluation.hpp"
#include "thop/instance.hpp"
#include "thop/packing.hpp"

namespace thop {

struct SolverConfig {
  AcoParams aco;
  PackingParams packing;
  double time_budget_s = 1.0;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  // 0 disables the iteration cap.
  std::size_t max_iterations = 0;
  // Ignore the wall clock entirely: stop on max_iterations only and leave
  // timestamps out of the run log, so reruns are byte-identical.
  bool deterministic = false;
};

// ceil(0.1 * m) seconds, at least one second.
double default_time_budget(const Instance& inst);

struct LogRecord {
  double elapsed_s = 0.0;
  std::size_t iteration = 0;
  std::int64_t best_profit = 0;
};

struct RunLog {
  std::vector<LogRecord> records;
  std::size_t iterations = 0;
  double elapsed_s = 0.0;
};

enum class SolveStatus { ok, no_feasible_route };

struct SolveResult {
  SolveStatus status = SolveStatus::ok;
  Solution best;
  Evaluation evaluation;
  UpperBound upper_bound;
  RunLog log;
};

// Drops every intermediate city with no picked item, keeping order. Returns
// the route unchanged when the instance violates the triangle inequality.
Route prune_route(const Instance& inst, const Route& route,
                  const PackingPlan& plan);

// Ant colony search with per-route packing, optional local search accepted
// only when it packs a higher profit, pruned best-solution tracking and
// MAX-MIN pheromone updates, until the time budget (or iteration cap) runs
// out.
SolveResult solve(const Instance& inst, const SolverConfig& cfg);

// JSON-lines: one "start" line echoing the configuration, one "improvement"
// line per log record and a closing "final" line with the solution.
std::string write_run_log(const Instance& inst, const SolverConfig& cfg,
                          const SolveResult& result);

}  // namespace thop

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thop/evaluation.hpp"
#include "thop/instance.hpp"
#include "thop/solver.hpp"

namespace thop {

// Sets one tunable by name. Keys: ants, alpha, beta, rho, localsearch,
// candidates, ptries, pack_exponents (A,B,C), pack_width, time, seed,
// threads, max_iterations, deterministic. Throws on unknown keys or values.
void apply_parameter(SolverConfig& cfg, std::string_view key,
                     std::string_view value);

// key=value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_profile(
    std::string_view text);

// "<dir>/<XXX_YY_ZZZ>.params" for the instance's tuning group, if present.
std::optional<std::string> find_profile(const std::string& dir,
                                        const std::string& instance_path);

// Messages for parameters outside the tuning grid (the run still proceeds).
std::vector<std::string> domain_warnings(const SolverConfig& cfg);

// Canonical "key=value;..." echo of the tunables.
std::string parameter_echo(const SolverConfig& cfg);

// THOP_THREADS if set to a positive integer, otherwise 1.
unsigned default_threads();

struct RunResult {
  std::string key;  // hash of (instance, seed, parameters)
  std::string instance;
  std::uint64_t seed = 0;
  std::int64_t profit = 0;
  double travel_time = 0.0;
  double elapsed_s = 0.0;
  std::string params;
};

std::string run_key(const Instance& inst, std::uint64_t seed,
                    const std::string& params);

std::string results_csv_header();
std::string to_csv_row(const RunResult& r);
std::vector<RunResult> read_results_csv(std::string_view text);

struct SweepOptions {
  std::vector<std::string> instances;
  std::uint64_t first_seed = 1;
  unsigned seeds = 30;
  std::string params_dir;  // optional per-group profiles
  std::vector<std::pair<std::string, std::string>> overrides;
  bool op_mode = false;    // force the orienteering reduction
  std::string results_csv;
  std::string solutions_dir;  // optional; one solution file per run
  unsigned workers = 1;
};

struct SweepSummary {
  std::size_t executed = 0;
  std::size_t skipped = 0;
};

// Runs every (instance, seed) pair not already present in results_csv and
// appends one row per run.
SweepSummary sweep(const SweepOptions& opts);

// Builds the solver configuration a run would use for `instance_path`:
// defaults, then the group profile, then explicit overrides.
SolverConfig resolve_config(const Instance& inst,
                            const std::string& instance_path,
                            const std::string& params_dir,
                            const std::vector<std::pair<std::string, std::string>>& overrides);

struct AggregateRow {
  std::string instance;
  std::size_t runs = 0;
  double mean_profit = 0.0;
  std::int64_t best_profit = 0;
  std::optional<double> reference;
  std::optional<double> ratio;  // mean / reference
};

struct AggregateReport {
  std::vector<AggregateRow> rows;
  std::vector<std::string> warnings;

  std::string csv() const;
};

// Reference CSV: "instance,best" with a header line.
std::map<std::string, double> read_reference_csv(std::string_view text);

AggregateReport aggregate(const std::vector<RunResult>& results,
                          const std::map<std::string, double>& reference);

// Nearest-neighbour tour from the start through every city, closing at the
// end city, and its travel time with every item picked.
Route greedy_tour(const Instance& inst);
double greedy_tour_time(const Instance& inst);

// CSV of route segments with the knapsack weight carried on each leg, plus
// start and end markers. Throws for infeasible solutions.
std::string export_plot_data(const Instance& inst, const Solution& sol);

}  // namespace thop

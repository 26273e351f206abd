// thop: command-line front end over the C interface of libthop.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thop/thop.h"

namespace {

struct InstanceDeleter {
  void operator()(thop_instance* p) const { thop_instance_free(p); }
};
struct ConfigDeleter {
  void operator()(thop_config* p) const { thop_config_free(p); }
};
struct SolutionDeleter {
  void operator()(thop_solution* p) const { thop_solution_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { thop_string_free(p); }
};

using InstancePtr = std::unique_ptr<thop_instance, InstanceDeleter>;
using ConfigPtr = std::unique_ptr<thop_config, ConfigDeleter>;
using SolutionPtr = std::unique_ptr<thop_solution, SolutionDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

void check(thop_status status, const std::string& context) {
  if (status != THOP_OK) {
    throw CliError(static_cast<int>(status),
                   context + ": " + thop_status_name(status) + ": " + thop_last_error());
  }
}

InstancePtr load(const std::string& path, bool op_mode) {
  thop_instance* raw = nullptr;
  check(thop_instance_load(path.c_str(), &raw), path);
  InstancePtr inst(raw);
  if (op_mode || thop_path_is_op_instance(path.c_str())) {
    thop_instance* op = nullptr;
    check(thop_instance_to_op(inst.get(), &op), "op-mode transform");
    inst.reset(op);
  }
  return inst;
}

SolutionPtr read_solution(const thop_instance* inst, const std::string& path) {
  thop_solution* raw = nullptr;
  check(thop_solution_read(inst, path.c_str(), &raw), path);
  return SolutionPtr(raw);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw CliError(THOP_ERR_IO, "cannot write " + out_path);
}

// Solver flags shared by `solve` and `sweep`; only flags given on the command
// line become overrides.
struct SolverFlags {
  std::string ants, alpha, beta, rho, localsearch, candidates, ptries,
      pack_exponents, pack_width, time, threads, max_iterations;
  bool deterministic = false;

  void add(CLI::App* app) {
    app->add_option("--ants", ants, "Number of ants");
    app->add_option("--alpha", alpha, "Pheromone influence");
    app->add_option("--beta", beta, "Distance influence");
    app->add_option("--rho", rho, "Evaporation rate");
    app->add_option("--localsearch", localsearch, "none, 2opt, 2.5opt or 3opt");
    app->add_option("--candidates", candidates, "Nearest-neighbour list length");
    app->add_option("--ptries", ptries, "Packing attempts per route");
    app->add_option("--pack-exponents", pack_exponents, "Score exponents A,B,C");
    app->add_option("--pack-width", pack_width, "Exponent perturbation half-width");
    app->add_option("--time", time, "Time budget in seconds (default ceil(0.1 m))");
    app->add_option("--threads", threads, "Worker threads (default $THOP_THREADS or 1)");
    app->add_option("--max-iterations", max_iterations, "Iteration cap (0 = none)");
    app->add_flag("--deterministic", deterministic,
                  "Stop on --max-iterations only and omit timestamps from the log");
  }

  std::vector<std::string> overrides() const {
    std::vector<std::string> out;
    auto put = [&](const char* key, const std::string& v) {
      if (!v.empty()) out.push_back(std::string(key) + "=" + v);
    };
    put("ants", ants);
    put("alpha", alpha);
    put("beta", beta);
    put("rho", rho);
    put("localsearch", localsearch);
    put("candidates", candidates);
    put("ptries", ptries);
    put("pack_exponents", pack_exponents);
    put("pack_width", pack_width);
    put("time", time);
    put("threads", threads);
    put("max_iterations", max_iterations);
    if (deterministic) out.push_back("deterministic=1");
    return out;
  }
};

void warn_domains(const thop_config* cfg) {
  char* raw = nullptr;
  check(thop_config_warnings(cfg, &raw), "config");
  StringPtr text(raw);
  if (*text) std::cerr << "warning: " << text.get();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thief Orienteering Problem solver"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run the ant colony solver on one instance");
  std::string solve_instance, solve_out, solve_log, solve_params_dir, solve_profile;
  std::uint64_t solve_seed = 1;
  bool solve_op = false;
  SolverFlags solve_flags;
  solve->add_option("instance", solve_instance, "Instance file")->required();
  solve->add_option("--seed", solve_seed, "Random seed");
  solve->add_option("--out", solve_out, "Solution file (default <instance stem>.sol)");
  solve->add_option("--log", solve_log, "JSON-lines run log");
  solve->add_option("--params-dir", solve_params_dir, "Directory of <XXX_YY_ZZZ>.params profiles");
  solve->add_option("--profile", solve_profile, "Explicit key=value parameter file");
  solve->add_flag("--op-mode", solve_op, "Apply the orienteering reduction first");
  solve_flags.add(solve);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Multi-seed benchmark sweep (resumable)");
  std::vector<std::string> sweep_instances;
  std::string sweep_results, sweep_solutions, sweep_params_dir;
  unsigned sweep_seeds = 30, sweep_workers = 1;
  std::uint64_t sweep_first_seed = 1;
  bool sweep_op = false;
  SolverFlags sweep_flags;
  sweep->add_option("instances", sweep_instances, "Instance files")->required();
  sweep->add_option("--results", sweep_results, "Results CSV (appended)")->required();
  sweep->add_option("--seeds", sweep_seeds, "Runs per instance");
  sweep->add_option("--first-seed", sweep_first_seed, "Seed of the first run");
  sweep->add_option("--solutions-dir", sweep_solutions, "Directory for solution files");
  sweep->add_option("--params-dir", sweep_params_dir, "Directory of <XXX_YY_ZZZ>.params profiles");
  sweep->add_option("--workers", sweep_workers, "Concurrent runs");
  sweep->add_flag("--op-mode", sweep_op, "Apply the orienteering reduction first");
  sweep_flags.add(sweep);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum of a tiny instance");
  std::string oracle_instance, oracle_out;
  std::size_t oracle_max_n = 8, oracle_max_m = 8;
  bool oracle_op = false;
  oracle->add_option("instance", oracle_instance, "Instance file")->required();
  oracle->add_option("--max-cities", oracle_max_n, "City limit");
  oracle->add_option("--max-items", oracle_max_m, "Item limit");
  oracle->add_option("--out", oracle_out, "Solution file");
  oracle->add_flag("--op-mode", oracle_op, "Apply the orienteering reduction first");

  // verify
  auto* verify = app.add_subcommand("verify", "Check a solution against all constraints");
  std::string verify_instance, verify_solution;
  bool verify_op = false;
  verify->add_option("instance", verify_instance, "Instance file")->required();
  verify->add_option("solution", verify_solution, "Solution file")->required();
  verify->add_flag("--op-mode", verify_op, "Apply the orienteering reduction first");

  // export-model
  auto* model = app.add_subcommand("export-model", "Write the mathematical model");
  std::string model_instance, model_out;
  bool model_op = false;
  model->add_option("instance", model_instance, "Instance file")->required();
  model->add_option("--out", model_out, "Output file (default stdout)");
  model->add_flag("--op-mode", model_op, "Apply the orienteering reduction first");

  // aggregate
  auto* agg = app.add_subcommand("aggregate", "Mean profit and approximation ratios");
  std::string agg_results, agg_reference, agg_out;
  agg->add_option("results", agg_results, "Results CSV from sweep")->required();
  agg->add_option("--reference", agg_reference, "CSV of instance,best")->required();
  agg->add_option("--out", agg_out, "Output CSV (default stdout)");

  // plot-data
  auto* plot = app.add_subcommand("plot-data", "Route segments with carried weight");
  std::string plot_instance, plot_solution, plot_out;
  bool plot_op = false;
  plot->add_option("instance", plot_instance, "Instance file")->required();
  plot->add_option("solution", plot_solution, "Solution file")->required();
  plot->add_option("--out", plot_out, "Output CSV (default stdout)");
  plot->add_flag("--op-mode", plot_op, "Apply the orienteering reduction first");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      InstancePtr inst = load(solve_instance, solve_op);
      thop_config* raw_cfg = nullptr;
      check(thop_config_create(inst.get(), &raw_cfg), "config");
      ConfigPtr cfg(raw_cfg);
      if (!solve_params_dir.empty()) {
        int found = 0;
        check(thop_config_apply_group_profile(cfg.get(), solve_params_dir.c_str(),
                                              solve_instance.c_str(), &found),
              "profile");
        if (!found) std::cerr << "note: no group profile for " << solve_instance << '\n';
      }
      if (!solve_profile.empty()) {
        check(thop_config_load_profile(cfg.get(), solve_profile.c_str()), solve_profile);
      }
      for (const std::string& kv : solve_flags.overrides()) {
        const auto eq = kv.find('=');
        check(thop_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()),
              "--" + kv.substr(0, eq));
      }
      check(thop_config_set(cfg.get(), "seed", std::to_string(solve_seed).c_str()), "--seed");
      warn_domains(cfg.get());

      thop_solution* raw_sol = nullptr;
      double elapsed = 0.0;
      const thop_status st = thop_solve(inst.get(), cfg.get(),
                                        solve_log.empty() ? nullptr : solve_log.c_str(),
                                        &raw_sol, &elapsed);
      if (st == THOP_ERR_NO_FEASIBLE_ROUTE) {
        std::cout << "no feasible route\n";
        return static_cast<int>(st);
      }
      check(st, "solve");
      SolutionPtr sol(raw_sol);
      std::string out = solve_out;
      if (out.empty()) {
        out = std::filesystem::path(solve_instance).stem().string() + ".sol";
      }
      check(thop_solution_write(sol.get(), out.c_str()), out);
      std::printf("profit %lld\ntravel_time %.6f\nelapsed_s %.3f\nsolution %s\n",
                  static_cast<long long>(thop_solution_profit(sol.get())),
                  thop_solution_travel_time(sol.get()), elapsed, out.c_str());
    } else if (*sweep) {
      std::vector<const char*> paths;
      for (const auto& p : sweep_instances) paths.push_back(p.c_str());
      const auto overrides = sweep_flags.overrides();
      std::vector<const char*> ov;
      for (const auto& o : overrides) ov.push_back(o.c_str());
      thop_sweep_options opts{};
      opts.instances = paths.data();
      opts.instance_count = paths.size();
      opts.first_seed = sweep_first_seed;
      opts.seeds = sweep_seeds;
      opts.params_dir = sweep_params_dir.empty() ? nullptr : sweep_params_dir.c_str();
      opts.overrides = ov.data();
      opts.override_count = ov.size();
      opts.op_mode = sweep_op ? 1 : 0;
      opts.results_csv = sweep_results.c_str();
      opts.solutions_dir = sweep_solutions.empty() ? nullptr : sweep_solutions.c_str();
      opts.workers = sweep_workers;
      std::size_t executed = 0, skipped = 0;
      check(thop_sweep(&opts, &executed, &skipped), "sweep");
      std::printf("runs executed %zu\nruns skipped %zu\n", executed, skipped);
    } else if (*oracle) {
      InstancePtr inst = load(oracle_instance, oracle_op);
      thop_solution* raw = nullptr;
      const thop_status st = thop_oracle(inst.get(), oracle_max_n, oracle_max_m, &raw);
      if (st == THOP_ERR_NO_FEASIBLE_ROUTE) {
        std::cout << "no feasible route\n";
        return static_cast<int>(st);
      }
      check(st, "oracle");
      SolutionPtr sol(raw);
      char* text = nullptr;
      check(thop_solution_text(sol.get(), &text), "oracle");
      StringPtr owned(text);
      if (!oracle_out.empty()) emit(text, oracle_out);
      std::printf("profit %lld\ntravel_time %.6f\n%s",
                  static_cast<long long>(thop_solution_profit(sol.get())),
                  thop_solution_travel_time(sol.get()), text);
    } else if (*verify) {
      InstancePtr inst = load(verify_instance, verify_op);
      SolutionPtr sol = read_solution(inst.get(), verify_solution);
      int passed = 0;
      char* report = nullptr;
      check(thop_verify(inst.get(), sol.get(), &passed, &report), "verify");
      StringPtr owned(report);
      std::cout << report;
      return passed ? 0 : THOP_ERR_INFEASIBLE;
    } else if (*model) {
      InstancePtr inst = load(model_instance, model_op);
      char* text = nullptr;
      check(thop_export_model(inst.get(), &text), "export-model");
      StringPtr owned(text);
      emit(text, model_out);
    } else if (*agg) {
      char* text = nullptr;
      char* warnings = nullptr;
      check(thop_aggregate(agg_results.c_str(), agg_reference.c_str(), &text, &warnings),
            "aggregate");
      StringPtr owned(text), owned_warn(warnings);
      if (*warnings) std::cerr << warnings;
      emit(text, agg_out);
    } else if (*plot) {
      InstancePtr inst = load(plot_instance, plot_op);
      SolutionPtr sol = read_solution(inst.get(), plot_solution);
      char* text = nullptr;
      check(thop_plot_data(inst.get(), sol.get(), &text), "plot-data");
      StringPtr owned(text);
      emit(text, plot_out);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code();
  }
  return 0;
}

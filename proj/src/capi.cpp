#include "thop/thop.h"

#include <cstdlib>
#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "thop/bounds.hpp"
#include "thop/error.hpp"
#include "thop/evaluation.hpp"
#include "thop/harness.hpp"
#include "thop/instance.hpp"
#include "thop/minlp.hpp"
#include "thop/solver.hpp"
#include "text_util.hpp"

struct thop_instance {
  thop::Instance inst;
  thop::UpperBound ub;
};

struct thop_config {
  thop::SolverConfig cfg;
};

struct thop_solution {
  thop::Solution sol;
  thop::Evaluation eval;
};

namespace {

thread_local std::string last_error;

thop_status fail(thop_status status, const std::string& msg) {
  last_error = msg;
  return status;
}

thop_status map_error(const thop::Error& e) {
  switch (e.kind()) {
    case thop::ErrorKind::invalid_argument:
      return fail(THOP_ERR_INVALID_ARGUMENT, e.what());
    case thop::ErrorKind::parse: return fail(THOP_ERR_PARSE, e.what());
    case thop::ErrorKind::io: return fail(THOP_ERR_IO, e.what());
    case thop::ErrorKind::infeasible: return fail(THOP_ERR_INFEASIBLE, e.what());
    case thop::ErrorKind::limit_exceeded: return fail(THOP_ERR_LIMIT, e.what());
    case thop::ErrorKind::bound_violation: return fail(THOP_ERR_INTERNAL, e.what());
  }
  return fail(THOP_ERR_INTERNAL, e.what());
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
thop_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const thop::Error& e) {
    return map_error(e);
  } catch (const std::bad_alloc&) {
    return fail(THOP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(THOP_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Evaluates the items that lie on the route; picks at unrouted cities are
// left for the model check, which reports them through z.
thop::Evaluation evaluate_routed(const thop::Instance& inst, const thop::Solution& sol) {
  std::vector<std::uint8_t> on_route(inst.num_cities(), 0);
  for (thop::CityId city : sol.route.cities) on_route[city] = 1;
  thop::PackingPlan routed(inst.num_items());
  for (thop::ItemId k : sol.plan.picked_items()) {
    if (on_route[inst.item(k).city]) routed.pick(inst.item(k));
  }
  thop::Evaluation ev = thop::evaluate(inst, sol.route, routed);
  ev.profit = sol.plan.total_profit();
  return ev;
}

thop_solution* make_solution(const thop::Instance& inst, thop::Solution sol) {
  auto* out = new thop_solution{std::move(sol), {}};
  out->eval = evaluate_routed(inst, out->sol);
  return out;
}

#define THOP_REQUIRE(cond)                                                 \
  do {                                                                     \
    if (!(cond)) return fail(THOP_ERR_INVALID_ARGUMENT, "null argument"); \
  } while (0)

}  // namespace

extern "C" {

const char* thop_last_error(void) { return last_error.c_str(); }

const char* thop_status_name(thop_status status) {
  switch (status) {
    case THOP_OK: return "ok";
    case THOP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case THOP_ERR_PARSE: return "parse error";
    case THOP_ERR_IO: return "i/o error";
    case THOP_ERR_INFEASIBLE: return "infeasible";
    case THOP_ERR_LIMIT: return "size limit exceeded";
    case THOP_ERR_NO_FEASIBLE_ROUTE: return "no feasible route";
    case THOP_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void thop_string_free(char* s) { std::free(s); }

thop_status thop_instance_load(const char* path, thop_instance** out) {
  THOP_REQUIRE(path && out);
  return guarded([&] {
    thop::Instance inst = thop::load_instance(path);
    const auto ub = thop::fractional_kp_ub(inst);
    *out = new thop_instance{std::move(inst), ub};
    return THOP_OK;
  });
}

thop_status thop_instance_parse(const char* text, size_t len, thop_instance** out) {
  THOP_REQUIRE(text && out);
  return guarded([&] {
    thop::Instance inst = thop::parse_instance(std::string_view(text, len));
    const auto ub = thop::fractional_kp_ub(inst);
    *out = new thop_instance{std::move(inst), ub};
    return THOP_OK;
  });
}

thop_status thop_instance_to_op(const thop_instance* inst, thop_instance** out) {
  THOP_REQUIRE(inst && out);
  return guarded([&] {
    thop::Instance op = thop::to_op_instance(inst->inst);
    const auto ub = thop::fractional_kp_ub(op);
    *out = new thop_instance{std::move(op), ub};
    return THOP_OK;
  });
}

void thop_instance_free(thop_instance* inst) { delete inst; }

size_t thop_instance_num_cities(const thop_instance* inst) {
  return inst ? inst->inst.num_cities() : 0;
}

size_t thop_instance_num_items(const thop_instance* inst) {
  return inst ? inst->inst.num_items() : 0;
}

double thop_instance_upper_bound(const thop_instance* inst) {
  return inst ? inst->ub.value : 0.0;
}

double thop_instance_default_budget(const thop_instance* inst) {
  return inst ? thop::default_time_budget(inst->inst) : 0.0;
}

int thop_path_is_op_instance(const char* path) {
  if (!path) return 0;
  const auto id = thop::InstanceId::parse(path);
  return id && id->op_mode() ? 1 : 0;
}

thop_status thop_config_create(const thop_instance* inst, thop_config** out) {
  THOP_REQUIRE(inst && out);
  return guarded([&] {
    auto* cfg = new thop_config{};
    cfg->cfg.threads = thop::default_threads();
    cfg->cfg.time_budget_s = thop::default_time_budget(inst->inst);
    *out = cfg;
    return THOP_OK;
  });
}

void thop_config_free(thop_config* cfg) { delete cfg; }

thop_status thop_config_set(thop_config* cfg, const char* key, const char* value) {
  THOP_REQUIRE(cfg && key && value);
  return guarded([&] {
    thop::apply_parameter(cfg->cfg, key, value);
    return THOP_OK;
  });
}

thop_status thop_config_load_profile(thop_config* cfg, const char* path) {
  THOP_REQUIRE(cfg && path);
  return guarded([&] {
    // Apply to a copy so a bad line leaves the configuration untouched.
    thop::SolverConfig next = cfg->cfg;
    for (const auto& [k, v] : thop::read_profile(thop::detail::read_file(path))) {
      thop::apply_parameter(next, k, v);
    }
    cfg->cfg = next;
    return THOP_OK;
  });
}

thop_status thop_config_apply_group_profile(thop_config* cfg, const char* dir,
                                            const char* instance_path, int* found) {
  THOP_REQUIRE(cfg && dir && instance_path);
  return guarded([&] {
    const auto profile = thop::find_profile(dir, instance_path);
    if (found) *found = profile ? 1 : 0;
    if (!profile) return THOP_OK;
    return thop_config_load_profile(cfg, profile->c_str());
  });
}

thop_status thop_config_warnings(const thop_config* cfg, char** out) {
  THOP_REQUIRE(cfg && out);
  return guarded([&] {
    std::string text;
    for (const std::string& w : thop::domain_warnings(cfg->cfg)) text += w + '\n';
    *out = dup_string(text);
    return THOP_OK;
  });
}

thop_status thop_config_echo(const thop_config* cfg, char** out) {
  THOP_REQUIRE(cfg && out);
  return guarded([&] {
    *out = dup_string(thop::parameter_echo(cfg->cfg));
    return THOP_OK;
  });
}

thop_status thop_solve(const thop_instance* inst, const thop_config* cfg,
                       const char* runlog_path, thop_solution** out,
                       double* elapsed_s) {
  THOP_REQUIRE(inst && cfg && out);
  return guarded([&] {
    const thop::SolveResult res = thop::solve(inst->inst, cfg->cfg);
    if (runlog_path) {
      thop::detail::write_file(runlog_path,
                               thop::write_run_log(inst->inst, cfg->cfg, res));
    }
    if (elapsed_s) *elapsed_s = res.log.elapsed_s;
    if (res.status == thop::SolveStatus::no_feasible_route) {
      *out = nullptr;
      return fail(THOP_ERR_NO_FEASIBLE_ROUTE,
                  "no feasible route: the direct journey exceeds the time limit");
    }
    *out = new thop_solution{res.best, res.evaluation};
    return THOP_OK;
  });
}

thop_status thop_oracle(const thop_instance* inst, size_t max_cities,
                        size_t max_items, thop_solution** out) {
  THOP_REQUIRE(inst && out);
  return guarded([&] {
    thop::BruteForceLimits limits;
    if (max_cities) limits.max_cities = max_cities;
    if (max_items) limits.max_items = max_items;
    auto best = thop::brute_force_solve(inst->inst, limits);
    if (!best) {
      *out = nullptr;
      return fail(THOP_ERR_NO_FEASIBLE_ROUTE,
                  "no feasible route: the direct journey exceeds the time limit");
    }
    *out = make_solution(inst->inst, std::move(*best));
    return THOP_OK;
  });
}

thop_status thop_solution_read(const thop_instance* inst, const char* path,
                               thop_solution** out) {
  THOP_REQUIRE(inst && path && out);
  return guarded([&] {
    thop::Solution sol =
        thop::parse_solution(inst->inst, thop::detail::read_file(path));
    thop::validate_route(inst->inst, sol.route);
    *out = make_solution(inst->inst, std::move(sol));
    return THOP_OK;
  });
}

thop_status thop_solution_write(const thop_solution* sol, const char* path) {
  THOP_REQUIRE(sol && path);
  return guarded([&] {
    thop::detail::write_file(path, thop::write_solution(sol->sol));
    return THOP_OK;
  });
}

thop_status thop_solution_text(const thop_solution* sol, char** out) {
  THOP_REQUIRE(sol && out);
  return guarded([&] {
    *out = dup_string(thop::write_solution(sol->sol));
    return THOP_OK;
  });
}

void thop_solution_free(thop_solution* sol) { delete sol; }

int64_t thop_solution_profit(const thop_solution* sol) {
  return sol ? sol->sol.plan.total_profit() : 0;
}

double thop_solution_travel_time(const thop_solution* sol) {
  return sol ? sol->eval.travel_time : 0.0;
}

int64_t thop_solution_weight(const thop_solution* sol) {
  return sol ? sol->sol.plan.total_weight() : 0;
}

size_t thop_solution_route_length(const thop_solution* sol) {
  return sol ? sol->sol.route.size() : 0;
}

size_t thop_solution_route(const thop_solution* sol, size_t* cities, size_t cap) {
  if (!sol || !cities) return 0;
  const auto& c = sol->sol.route.cities;
  const size_t count = std::min(cap, c.size());
  for (size_t i = 0; i < count; ++i) cities[i] = c[i] + 1;
  return count;
}

thop_status thop_verify(const thop_instance* inst, const thop_solution* sol,
                        int* passed, char** report) {
  THOP_REQUIRE(inst && sol && passed);
  return guarded([&] {
    std::string text;
    bool ok = true;
    thop::Evaluation ev;
    try {
      ev = thop::evaluate(inst->inst, sol->sol.route, sol->sol.plan, /*strict=*/true);
      text += "evaluation: feasible\n";
    } catch (const thop::Error& e) {
      ok = false;
      text += std::string("evaluation: FAIL (") + e.what() + ")\n";
      ev = evaluate_routed(inst->inst, sol->sol);
    }
    text += "profit: " + std::to_string(ev.profit) + "\n";
    text += "travel time: " + thop::detail::format_double(ev.travel_time) +
            (ev.within_time_raw ? " (within T)\n" : " (exceeds T without tolerance)\n");

    // Lift directly so constraint checks run even for infeasible inputs.
    thop::ModelVariables vars(inst->inst.num_cities(), inst->inst.num_items());
    const auto& c = sol->sol.route.cities;
    for (size_t p = 1; p < c.size(); ++p) vars.arc(c[p - 1], c[p]) = 1;
    for (const thop::Leg& leg : ev.legs) {
      vars.y[leg.city] = 1;
      vars.q[leg.city] = static_cast<double>(leg.departing_weight);
      vars.t[leg.city] = leg.arrival;
    }
    for (size_t k = 0; k < inst->inst.num_items(); ++k) {
      vars.z[k] = sol->sol.plan.picked(k) ? 1 : 0;
    }
    const thop::VerificationReport rep = thop::verify(inst->inst, vars);
    ok = ok && rep.passed();
    text += rep.str();
    *passed = ok ? 1 : 0;
    if (report) *report = dup_string(text);
    return THOP_OK;
  });
}

thop_status thop_solution_stats(const thop_instance* inst, const thop_solution* sol,
                                double* distance_per_city, double* pct_time,
                                double* pct_weight) {
  THOP_REQUIRE(inst && sol);
  return guarded([&] {
    const auto s = thop::solution_stats(inst->inst, sol->sol.route, sol->sol.plan);
    if (distance_per_city) *distance_per_city = s.distance_per_city;
    if (pct_time) *pct_time = s.pct_time;
    if (pct_weight) *pct_weight = s.pct_weight;
    return THOP_OK;
  });
}

thop_status thop_export_model(const thop_instance* inst, char** out) {
  THOP_REQUIRE(inst && out);
  return guarded([&] {
    *out = dup_string(thop::export_model(inst->inst));
    return THOP_OK;
  });
}

thop_status thop_plot_data(const thop_instance* inst, const thop_solution* sol,
                           char** out) {
  THOP_REQUIRE(inst && sol && out);
  return guarded([&] {
    *out = dup_string(thop::export_plot_data(inst->inst, sol->sol));
    return THOP_OK;
  });
}

thop_status thop_sweep(const thop_sweep_options* opts, size_t* executed,
                       size_t* skipped) {
  THOP_REQUIRE(opts && opts->results_csv && (opts->instances || !opts->instance_count));
  return guarded([&] {
    thop::SweepOptions o;
    for (size_t i = 0; i < opts->instance_count; ++i) o.instances.emplace_back(opts->instances[i]);
    o.first_seed = opts->first_seed;
    o.seeds = opts->seeds;
    if (opts->params_dir) o.params_dir = opts->params_dir;
    for (size_t i = 0; i < opts->override_count; ++i) {
      const std::string_view kv = opts->overrides[i];
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos) {
        throw thop::Error(thop::ErrorKind::invalid_argument,
                          "override '" + std::string(kv) + "' is not key=value");
      }
      o.overrides.emplace_back(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
    }
    o.op_mode = opts->op_mode != 0;
    o.results_csv = opts->results_csv;
    if (opts->solutions_dir) o.solutions_dir = opts->solutions_dir;
    o.workers = opts->workers;
    const auto summary = thop::sweep(o);
    if (executed) *executed = summary.executed;
    if (skipped) *skipped = summary.skipped;
    return THOP_OK;
  });
}

thop_status thop_aggregate(const char* results_csv, const char* reference_csv,
                           char** out, char** warnings) {
  THOP_REQUIRE(results_csv && reference_csv && out);
  return guarded([&] {
    const auto results = thop::read_results_csv(thop::detail::read_file(results_csv));
    const auto reference = thop::read_reference_csv(thop::detail::read_file(reference_csv));
    const auto report = thop::aggregate(results, reference);
    std::string warn;
    for (const auto& w : report.warnings) warn += w + '\n';
    *out = dup_string(report.csv());
    if (warnings) *warnings = dup_string(warn);
    return THOP_OK;
  });
}

}  // extern "C"

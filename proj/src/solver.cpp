#include "thop/solver.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "thop/error.hpp"
#include "thop/random.hpp"

namespace thop {

namespace {

using Clock = std::chrono::steady_clock;

struct AntResult {
  bool done = false;
  Route route;
  PackingPlan plan;
};

class Stopwatch {
 public:
  Stopwatch() : start_(Clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_;
};

void validate_config(const SolverConfig& cfg) {
  auto fail = [](const char* msg) { throw Error(ErrorKind::invalid_argument, msg); };
  if (cfg.aco.ants < 1) fail("ants must be at least 1");
  if (cfg.aco.rho < 0.0 || cfg.aco.rho > 1.0) fail("rho must lie in [0, 1]");
  if (cfg.aco.alpha < 0.0 || cfg.aco.beta < 0.0) fail("alpha and beta must be non-negative");
  if (cfg.aco.global_best_period == 0) fail("global-best period must be positive");
  if (cfg.packing.ptries < 1) fail("ptries must be at least 1");
  if (cfg.packing.perturbation_width < 0.0) fail("pack width must be non-negative");
  if (cfg.deterministic) {
    if (cfg.max_iterations == 0) fail("deterministic mode needs max_iterations");
  } else if (!(cfg.time_budget_s > 0.0)) {
    fail("time budget must be positive");
  }
}

}  // namespace

double default_time_budget(const Instance& inst) {
  return std::max(1.0, std::ceil(0.1 * static_cast<double>(inst.num_items())));
}

Route prune_route(const Instance& inst, const Route& route,
                  const PackingPlan& plan) {
  if (!inst.triangle_inequality()) return route;
  Route out;
  const auto& c = route.cities;
  for (std::size_t p = 0; p < c.size(); ++p) {
    const bool endpoint = p == 0 || p + 1 == c.size();
    bool stolen = false;
    for (ItemId k : inst.items_at(c[p])) {
      if (plan.picked(k)) {
        stolen = true;
        break;
      }
    }
    if (endpoint || stolen) out.cities.push_back(c[p]);
  }
  return out;
}

SolveResult solve(const Instance& inst, const SolverConfig& cfg) {
  validate_config(cfg);
  const Stopwatch watch;
  const bool timed = !cfg.deterministic;
  auto elapsed = [&] { return timed ? watch.seconds() : 0.0; };
  auto out_of_time = [&] { return timed && watch.seconds() >= cfg.time_budget_s; };

  SolveResult result;
  result.upper_bound = fractional_kp_ub(inst);
  result.best = Solution{Route{{inst.start(), inst.end()}},
                         PackingPlan(inst.num_items())};
  result.evaluation = evaluate(inst, result.best.route, result.best.plan);
  if (!result.evaluation.feasible) {
    result.status = SolveStatus::no_feasible_route;
    return result;
  }
  result.log.records.push_back(LogRecord{elapsed(), 0, 0});
  if (inst.num_items() == 0) {
    result.log.elapsed_s = elapsed();
    return result;
  }

  const UpperBound ub = result.upper_bound;
  const AcoParams& aco = cfg.aco;
  const std::size_t n = inst.num_cities();
  PheromoneState pher(n, mmas_bounds(ub, 0.0, aco.rho, n));
  ChoiceInfo choice(inst, aco.beta);
  const CandidateLists candidates(inst, aco.candidates);
  Solution& best = result.best;

  std::vector<AntResult> ants(static_cast<std::size_t>(aco.ants));
  const unsigned threads = std::max(1u, cfg.threads);

  // Integral profits cannot exceed floor(UB); reaching it proves optimality.
  const auto ceiling = static_cast<std::int64_t>(std::floor(ub.value + 1e-9));

  std::size_t iteration = 0;
  while (true) {
    if (best.plan.total_profit() >= ceiling) break;
    if (cfg.max_iterations && iteration >= cfg.max_iterations) break;
    if (out_of_time()) break;
    ++iteration;
    choice.update(pher, aco.alpha);

    auto run_ant = [&](std::size_t a) {
      AntResult& ant = ants[a];
      ant.done = false;
      if (out_of_time()) return;
      Rng rng(derive_seed(cfg.seed, iteration, a));
      ant.route = construct_route(inst, choice, candidates, rng);
      ant.plan = pack(inst, ant.route, cfg.packing, rng);
      if (aco.local_search != LocalSearch::none) {
        Route improved = local_search(inst, ant.route, aco.local_search);
        PackingPlan repacked = pack(inst, improved, cfg.packing, rng);
        if (repacked.total_profit() > ant.plan.total_profit()) {
          ant.route = std::move(improved);
          ant.plan = std::move(repacked);
        }
      }
      ant.done = true;
    };

    if (threads == 1) {
      for (std::size_t a = 0; a < ants.size(); ++a) run_ant(a);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
          for (std::size_t a; (a = next.fetch_add(1)) < ants.size();) run_ant(a);
        });
      }
    }

    // Serialized phase: best-solution bookkeeping and pheromone update.
    const AntResult* iteration_best = nullptr;
    for (const AntResult& ant : ants) {
      if (!ant.done) continue;
      if (!iteration_best ||
          ant.plan.total_profit() > iteration_best->plan.total_profit()) {
        iteration_best = &ant;
      }
      if (ant.plan.total_profit() > best.plan.total_profit()) {
        best.route = prune_route(inst, ant.route, ant.plan);
        best.plan = ant.plan;
        result.log.records.push_back(
            LogRecord{elapsed(), iteration, best.plan.total_profit()});
        pher.set_bounds(mmas_bounds(ub, double(best.plan.total_profit()),
                                    aco.rho, n));
      }
    }
    if (!iteration_best) break;

    const double best_fitness = fitness(ub, double(best.plan.total_profit()));
    pher.global_best_fitness = best_fitness;
    pher.iteration_best_fitness =
        fitness(ub, double(iteration_best->plan.total_profit()));
    if (iteration % aco.global_best_period == 0) {
      update_pheromones(pher, best.route, best_fitness, aco);
    } else {
      update_pheromones(pher,
                        prune_route(inst, iteration_best->route,
                                    iteration_best->plan),
                        pher.iteration_best_fitness, aco);
    }
  }

  result.log.iterations = iteration;
  result.log.elapsed_s = elapsed();
  result.evaluation = evaluate(inst, best.route, best.plan, /*strict=*/true);
  return result;
}

std::string write_run_log(const Instance& inst, const SolverConfig& cfg,
                          const SolveResult& result) {
  using nlohmann::json;
  std::string out;
  json start = {
      {"event", "start"},
      {"instance", inst.name()},
      {"seed", cfg.seed},
      {"threads", cfg.threads},
      {"deterministic", cfg.deterministic},
      {"time_budget_s", cfg.time_budget_s},
      {"max_iterations", cfg.max_iterations},
      {"upper_bound", result.upper_bound.value},
      {"params",
       {{"ants", cfg.aco.ants},
        {"alpha", cfg.aco.alpha},
        {"beta", cfg.aco.beta},
        {"rho", cfg.aco.rho},
        {"localsearch", std::string(to_string(cfg.aco.local_search))},
        {"candidates", cfg.aco.candidates},
        {"ptries", cfg.packing.ptries},
        {"pack_exponents",
         {cfg.packing.exponents.profit, cfg.packing.exponents.weight,
          cfg.packing.exponents.distance}},
        {"pack_width", cfg.packing.perturbation_width}}},
  };
  out += start.dump() + '\n';
  for (const LogRecord& r : result.log.records) {
    json rec = {{"event", "improvement"},
                {"iteration", r.iteration},
                {"profit", r.best_profit}};
    if (!cfg.deterministic) rec["elapsed_s"] = r.elapsed_s;
    out += rec.dump() + '\n';
  }
  json fin = {{"event", "final"},
              {"status", result.status == SolveStatus::ok ? "ok" : "no_feasible_route"},
              {"iterations", result.log.iterations}};
  if (result.status == SolveStatus::ok) {
    std::vector<std::size_t> route, items;
    for (CityId c : result.best.route.cities) route.push_back(c + 1);
    for (ItemId k : result.best.plan.picked_items()) items.push_back(k + 1);
    fin["profit"] = result.best.plan.total_profit();
    fin["travel_time"] = result.evaluation.travel_time;
    fin["weight"] = result.evaluation.final_weight;
    fin["route"] = route;
    fin["items"] = items;
  }
  if (!cfg.deterministic) fin["elapsed_s"] = result.log.elapsed_s;
  out += fin.dump() + '\n';
  return out;
}

}  // namespace thop

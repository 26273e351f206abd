#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "thop/bounds.hpp"
#include "thop/evaluation.hpp"
#include "thop/instance.hpp"
#include "thop/random.hpp"

namespace thop {

enum class LocalSearch { none, two_opt, two_half_opt, three_opt };

// Accepts "none", "2opt", "2.5opt", "3opt".
std::optional<LocalSearch> parse_local_search(std::string_view name);
std::string_view to_string(LocalSearch kind);

struct AcoParams {
  int ants = 50;
  double alpha = 1.0;
  double beta = 2.0;
  double rho = 0.5;
  LocalSearch local_search = LocalSearch::none;
  std::size_t candidates = 20;      // nearest-neighbour list length
  std::size_t global_best_period = 25;  // every k-th deposit uses the global best
};

// k nearest neighbours per city, never containing the start city (no arc
// enters it) or the city itself. Ties resolve to the lower index.
class CandidateLists {
 public:
  CandidateLists(const Instance& inst, std::size_t k);

  const std::vector<CityId>& operator[](CityId city) const {
    return lists_[city];
  }

 private:
  std::vector<std::vector<CityId>> lists_;
};

struct PheromoneBounds {
  double tau_min = 0.0;
  double tau_max = 1.0;
};

// MAX-MIN bounds: tau_max = 1 / (rho * (UB + 1 - best_profit)) and
// tau_min = tau_max / (2n). rho = 0 would make tau_max infinite, so the
// evaporation term is floored at 0.01 (the smallest positive rho on the
// tuning grid).
PheromoneBounds mmas_bounds(const UpperBound& ub, double best_profit,
                            double rho, std::size_t num_cities);

// Symmetric trail matrix kept within [tau_min, tau_max].
class PheromoneState {
 public:
  PheromoneState(std::size_t num_cities, PheromoneBounds bounds);

  std::size_t num_cities() const { return n_; }
  double trail(CityId i, CityId j) const { return tau_[i * n_ + j]; }
  const PheromoneBounds& bounds() const { return bounds_; }
  // New bounds take effect at the next clamp.
  void set_bounds(PheromoneBounds bounds) { bounds_ = bounds; }
  void fill(double value);

  void evaporate(double rho);
  void deposit(const Route& route, double amount);
  void clamp();

  double min_trail() const;
  double max_trail() const;

  // Fitness of the solutions that drove the latest deposits.
  double iteration_best_fitness = 0.0;
  double global_best_fitness = 0.0;

 private:
  std::size_t n_;
  PheromoneBounds bounds_;
  std::vector<double> tau_;
};

// tau(i,j)^alpha * (1 / max(d_ij, 1))^beta for every arc, recomputed once per
// iteration from a pheromone snapshot.
class ChoiceInfo {
 public:
  ChoiceInfo(const Instance& inst, double beta);

  void update(const PheromoneState& pher, double alpha);
  double operator()(CityId i, CityId j) const { return total_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> heuristic_;
  std::vector<double> total_;
};

// One ant walk from the start city; every step picks an unvisited city with
// probability proportional to its choice weight, restricted to the candidate
// list (plus the end city) unless the list is exhausted. Stops as soon as the
// end city is chosen.
Route construct_route(const Instance& inst, const ChoiceInfo& choice,
                      const CandidateLists& candidates, Rng& rng);

// Convenience form building the choice information and candidate lists.
Route construct_route(const Instance& inst, const PheromoneState& pher,
                      const AcoParams& params, Rng& rng);

// Path local search with both endpoints fixed. Never lengthens the route and
// never changes its city set.
Route local_search(const Instance& inst, const Route& route, LocalSearch kind);

// 1 / (UB + 1 - profit); throws Error(bound_violation) if profit > UB.
double fitness(const UpperBound& ub, double profit);

// Evaporate by (1 - rho), reinforce the arcs of `route` by `deposit`, clamp.
void update_pheromones(PheromoneState& pher, const Route& route,
                       double deposit, const AcoParams& params);

}  // namespace thop

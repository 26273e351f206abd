#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thop/instance.hpp"

namespace thop {

// Feasibility slack on t <= T comparisons.
inline constexpr double kTimeTolerance = 1e-6;

// Visited cities in order; starts at the instance start city, ends at the
// end city, no repeats.
struct Route {
  std::vector<CityId> cities;

  std::size_t size() const { return cities.size(); }
  bool operator==(const Route&) const = default;
};

class PackingPlan {
 public:
  PackingPlan() = default;
  explicit PackingPlan(std::size_t num_items) : picks_(num_items, 0) {}

  static PackingPlan from_items(const Instance& inst,
                                std::span<const ItemId> picked);

  std::size_t size() const { return picks_.size(); }
  bool picked(ItemId k) const { return picks_[k] != 0; }
  void pick(const Item& item);
  void drop(const Item& item);

  std::int64_t total_profit() const { return profit_; }
  std::int64_t total_weight() const { return weight_; }
  std::vector<ItemId> picked_items() const;

  bool operator==(const PackingPlan&) const = default;

 private:
  std::vector<std::uint8_t> picks_;
  std::int64_t profit_ = 0;
  std::int64_t weight_ = 0;
};

struct Solution {
  Route route;
  PackingPlan plan;

  bool operator==(const Solution&) const = default;
};

struct Leg {
  CityId city = 0;
  double arrival = 0.0;             // t_i
  std::int64_t departing_weight = 0;  // q_i
};

struct Evaluation {
  std::int64_t profit = 0;
  double travel_time = 0.0;
  std::int64_t final_weight = 0;
  bool within_capacity = true;
  bool within_time = true;      // travel_time <= T + kTimeTolerance
  bool within_time_raw = true;  // travel_time <= T exactly
  bool feasible = true;         // capacity and tolerant time
  std::vector<Leg> legs;
};

// vmax - nu * w; throws when w lies outside [0, W].
double speed(const Instance& inst, double weight);

// Throws Error(invalid_argument) describing the first violated route rule.
void validate_route(const Instance& inst, const Route& route);

// Full evaluation of <route, plan>. Items are loaded on arrival at their city
// and slow down only the legs that leave it. A pick at a city missing from
// the route always throws; over-capacity or over-time solutions throw
// (kind infeasible) when `strict`, otherwise they come back flagged.
Evaluation evaluate(const Instance& inst, const Route& route,
                    const PackingPlan& plan, bool strict = false);

// Same arithmetic as evaluate() without validation or the per-leg trace.
double travel_time(const Instance& inst, const Route& route,
                   const PackingPlan& plan);

std::int64_t route_distance(const Instance& inst, const Route& route);

struct SolutionStats {
  double distance_per_city = 0.0;  // total distance / |route|
  double pct_time = 0.0;
  double pct_weight = 0.0;
};

// Throws for infeasible solutions.
SolutionStats solution_stats(const Instance& inst, const Route& route,
                             const PackingPlan& plan);

// Two-line text format with 1-based ids: "[1,5,9]\n[3,12]\n".
std::string write_solution(const Solution& sol);
Solution parse_solution(const Instance& inst, std::string_view text);

}  // namespace thop

#include "thop/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "thop/error.hpp"
#include "text_util.hpp"

namespace thop {

PackingPlan PackingPlan::from_items(const Instance& inst,
                                    std::span<const ItemId> picked) {
  PackingPlan plan(inst.num_items());
  for (ItemId k : picked) {
    if (k >= inst.num_items()) {
      throw Error(ErrorKind::invalid_argument,
                  "item " + std::to_string(k + 1) + " out of range");
    }
    if (!plan.picked(k)) plan.pick(inst.item(k));
  }
  return plan;
}

void PackingPlan::pick(const Item& item) {
  if (picks_[item.id]) return;
  picks_[item.id] = 1;
  profit_ += item.profit;
  weight_ += item.weight;
}

void PackingPlan::drop(const Item& item) {
  if (!picks_[item.id]) return;
  picks_[item.id] = 0;
  profit_ -= item.profit;
  weight_ -= item.weight;
}

std::vector<ItemId> PackingPlan::picked_items() const {
  std::vector<ItemId> out;
  for (std::size_t k = 0; k < picks_.size(); ++k) {
    if (picks_[k]) out.push_back(k);
  }
  return out;
}

double speed(const Instance& inst, double weight) {
  if (weight < 0.0 || weight > static_cast<double>(inst.capacity())) {
    throw Error(ErrorKind::invalid_argument, "weight outside [0, W]");
  }
  return inst.max_speed() - inst.nu() * weight;
}

void validate_route(const Instance& inst, const Route& route) {
  const auto& c = route.cities;
  if (c.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "route needs at least 2 cities");
  }
  if (c.front() != inst.start()) {
    throw Error(ErrorKind::invalid_argument, "route must start at city 1");
  }
  if (c.back() != inst.end()) {
    throw Error(ErrorKind::invalid_argument, "route must end at city n");
  }
  std::vector<std::uint8_t> seen(inst.num_cities(), 0);
  for (CityId city : c) {
    if (city >= inst.num_cities()) {
      throw Error(ErrorKind::invalid_argument, "route city out of range");
    }
    if (seen[city]++) {
      throw Error(ErrorKind::invalid_argument,
                  "route repeats city " + std::to_string(city + 1));
    }
  }
}

namespace {

// Weight loaded at `city` by `plan`.
std::int64_t loaded_at(const Instance& inst, const PackingPlan& plan,
                       CityId city) {
  std::int64_t w = 0;
  for (ItemId k : inst.items_at(city)) {
    if (plan.picked(k)) w += inst.item(k).weight;
  }
  return w;
}

}  // namespace

Evaluation evaluate(const Instance& inst, const Route& route,
                    const PackingPlan& plan, bool strict) {
  validate_route(inst, route);
  if (plan.size() != inst.num_items()) {
    throw Error(ErrorKind::invalid_argument, "packing plan size mismatch");
  }

  std::vector<std::uint8_t> on_route(inst.num_cities(), 0);
  for (CityId city : route.cities) on_route[city] = 1;
  for (ItemId k : plan.picked_items()) {
    if (!on_route[inst.item(k).city]) {
      throw Error(ErrorKind::invalid_argument,
                  "item " + std::to_string(k + 1) + " picked at unrouted city " +
                      std::to_string(inst.item(k).city + 1));
    }
  }

  Evaluation ev;
  ev.legs.reserve(route.size());
  double t = 0.0;
  std::int64_t q = 0;
  const auto& c = route.cities;
  for (std::size_t pos = 0; pos < c.size(); ++pos) {
    if (pos > 0) {
      const double speed = inst.max_speed() - inst.nu() * static_cast<double>(q);
      // An overloaded knapsack can stall the thief entirely.
      t += speed > 0.0 ? static_cast<double>(inst.dist(c[pos - 1], c[pos])) / speed
                       : std::numeric_limits<double>::infinity();
    }
    q += loaded_at(inst, plan, c[pos]);
    ev.legs.push_back(Leg{c[pos], t, q});
  }
  ev.profit = plan.total_profit();
  ev.travel_time = t;
  ev.final_weight = q;
  ev.within_capacity = q <= inst.capacity();
  ev.within_time_raw = t <= inst.max_time();
  ev.within_time = t <= inst.max_time() + kTimeTolerance;
  ev.feasible = ev.within_capacity && ev.within_time;

  if (strict && !ev.feasible) {
    throw Error(ErrorKind::infeasible,
                !ev.within_capacity ? "knapsack capacity exceeded"
                                    : "travel time exceeds the limit");
  }
  return ev;
}

double travel_time(const Instance& inst, const Route& route,
                   const PackingPlan& plan) {
  double t = 0.0;
  std::int64_t q = 0;
  const auto& c = route.cities;
  for (std::size_t pos = 0; pos < c.size(); ++pos) {
    if (pos > 0) {
      const double speed = inst.max_speed() - inst.nu() * static_cast<double>(q);
      // An overloaded knapsack can stall the thief entirely.
      t += speed > 0.0 ? static_cast<double>(inst.dist(c[pos - 1], c[pos])) / speed
                       : std::numeric_limits<double>::infinity();
    }
    q += loaded_at(inst, plan, c[pos]);
  }
  return t;
}

std::int64_t route_distance(const Instance& inst, const Route& route) {
  std::int64_t total = 0;
  for (std::size_t pos = 1; pos < route.cities.size(); ++pos) {
    total += inst.dist(route.cities[pos - 1], route.cities[pos]);
  }
  return total;
}

SolutionStats solution_stats(const Instance& inst, const Route& route,
                             const PackingPlan& plan) {
  const Evaluation ev = evaluate(inst, route, plan, /*strict=*/true);
  SolutionStats stats;
  stats.distance_per_city = static_cast<double>(route_distance(inst, route)) /
                            static_cast<double>(route.size());
  stats.pct_time = 100.0 * ev.travel_time / inst.max_time();
  stats.pct_weight = 100.0 * static_cast<double>(ev.final_weight) /
                     static_cast<double>(inst.capacity());
  return stats;
}

std::string write_solution(const Solution& sol) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < sol.route.cities.size(); ++i) {
    out << (i ? "," : "") << sol.route.cities[i] + 1;
  }
  out << "]\n[";
  const auto items = sol.plan.picked_items();
  for (std::size_t i = 0; i < items.size(); ++i) {
    out << (i ? "," : "") << items[i] + 1;
  }
  out << "]\n";
  return out.str();
}

namespace {

std::vector<std::size_t> parse_id_list(std::string_view line,
                                       std::size_t line_no) {
  line = detail::trim(line);
  if (line.size() < 2 || line.front() != '[' || line.back() != ']') {
    throw ParseError(line_no, "expected a bracketed list");
  }
  line = detail::trim(line.substr(1, line.size() - 2));
  std::vector<std::size_t> ids;
  if (line.empty()) return ids;
  for (std::string_view field : detail::split(line, ',')) {
    std::size_t id = 0;
    if (!detail::parse_number(field, id) || id == 0) {
      throw ParseError(line_no, "invalid id '" + std::string(field) + "'");
    }
    ids.push_back(id - 1);
  }
  return ids;
}

}  // namespace

Solution parse_solution(const Instance& inst, std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (!detail::trim(line).empty()) lines.emplace_back(line_no, line);
  }
  if (lines.size() != 2) {
    throw ParseError(0, "solution text must have exactly two lines");
  }
  Solution sol;
  sol.route.cities = parse_id_list(lines[0].second, lines[0].first);
  for (CityId c : sol.route.cities) {
    if (c >= inst.num_cities()) {
      throw ParseError(lines[0].first, "city id out of range");
    }
  }
  const auto items = parse_id_list(lines[1].second, lines[1].first);
  for (ItemId k : items) {
    if (k >= inst.num_items()) {
      throw ParseError(lines[1].first, "item id out of range");
    }
  }
  sol.plan = PackingPlan::from_items(inst, items);
  return sol;
}

}  // namespace thop

// Fixtures shared by the test suites.
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "thop/evaluation.hpp"
#include "thop/instance.hpp"
#include "thop/random.hpp"

namespace thop::test {

// Item spec: profit, weight, 0-based city.
using ItemSpec = std::tuple<std::int64_t, std::int64_t, CityId>;

inline Instance make_instance(std::vector<Point> coords,
                              const std::vector<ItemSpec>& specs,
                              std::int64_t capacity, double max_time,
                              double vmin = 0.1, double vmax = 1.0,
                              std::string name = "test") {
  std::vector<Item> items;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const auto& [p, w, c] = specs[k];
    items.push_back(Item{k, p, w, c});
  }
  return Instance(std::move(name), std::move(coords), std::move(items), capacity,
                  max_time, vmin, vmax);
}

inline Route route_of(std::vector<CityId> cities) { return Route{std::move(cities)}; }

// Random tiny instance: n cities on a 100x100 grid, m items on middle cities,
// W about half the total weight, T a fraction of a slow full tour.
inline Instance random_tiny_instance(Rng& rng, std::size_t n, std::size_t m,
                                     const std::string& name = "tiny") {
  std::vector<Point> coords(n);
  for (auto& p : coords) {
    p.x = static_cast<double>(uniform_index(rng, 101));
    p.y = static_cast<double>(uniform_index(rng, 101));
  }
  std::vector<ItemSpec> specs;
  std::int64_t total_w = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const auto p = static_cast<std::int64_t>(1 + uniform_index(rng, 100));
    const auto w = static_cast<std::int64_t>(1 + uniform_index(rng, 50));
    const CityId c = 1 + uniform_index(rng, n - 2);
    specs.emplace_back(p, w, c);
    total_w += w;
  }
  const std::int64_t cap =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(total_w * uniform(rng, 0.3, 0.9)));
  double tour = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) tour += static_cast<double>(ceil_2d(coords[i], coords[i + 1]));
  const double direct = static_cast<double>(ceil_2d(coords.front(), coords.back()));
  const double limit = std::max(direct + 1.0, tour * uniform(rng, 0.4, 1.6));
  return make_instance(std::move(coords), specs, cap, limit, 0.1, 1.0, name);
}

// TTP-flavoured instance at benchmark scale (default 51 cities, k items per
// middle city, bounded strongly correlated profits).
inline Instance random_benchmark_like(Rng& rng, std::size_t n = 51,
                                      std::size_t items_per_city = 3,
                                      double time_fraction = 0.5,
                                      const std::string& name = "synthetic") {
  std::vector<Point> coords(n);
  for (auto& p : coords) {
    p.x = static_cast<double>(uniform_index(rng, 1000));
    p.y = static_cast<double>(uniform_index(rng, 1000));
  }
  std::vector<ItemSpec> specs;
  std::int64_t total_w = 0;
  for (std::size_t c = 1; c + 1 < n; ++c) {
    for (std::size_t j = 0; j < items_per_city; ++j) {
      const auto w = static_cast<std::int64_t>(1 + uniform_index(rng, 1000));
      specs.emplace_back(w + 100, w, c);
      total_w += w;
    }
  }
  double tour = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) tour += static_cast<double>(ceil_2d(coords[i], coords[i + 1]));
  return make_instance(std::move(coords), specs, total_w / 4, tour * time_fraction,
                       0.1, 1.0, name);
}

// Random valid route through a random subset of middle cities.
inline Route random_route(Rng& rng, const Instance& inst) {
  std::vector<CityId> middle;
  for (CityId c = 1; c + 1 < inst.num_cities(); ++c) {
    if (uniform01(rng) < 0.5) middle.push_back(c);
  }
  for (std::size_t i = middle.size(); i > 1; --i) {
    std::swap(middle[i - 1], middle[uniform_index(rng, i)]);
  }
  Route r;
  r.cities.push_back(inst.start());
  r.cities.insert(r.cities.end(), middle.begin(), middle.end());
  r.cities.push_back(inst.end());
  return r;
}

// Random plan over items at routed cities, respecting capacity.
inline PackingPlan random_plan(Rng& rng, const Instance& inst, const Route& route) {
  PackingPlan plan(inst.num_items());
  for (CityId c : route.cities) {
    for (ItemId k : inst.items_at(c)) {
      if (uniform01(rng) < 0.3 &&
          plan.total_weight() + inst.item(k).weight <= inst.capacity()) {
        plan.pick(inst.item(k));
      }
    }
  }
  return plan;
}

}  // namespace thop::test

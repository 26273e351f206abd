#include "thop/bounds.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "thop/error.hpp"

namespace thop {

UpperBound fractional_kp_ub(const Instance& inst) {
  std::vector<ItemId> order(inst.num_items());
  std::iota(order.begin(), order.end(), ItemId{0});
  // Density comparison by cross-multiplication keeps the order exact.
  std::sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
    const Item& ia = inst.item(a);
    const Item& ib = inst.item(b);
    const auto lhs = static_cast<__int128>(ia.profit) * ib.weight;
    const auto rhs = static_cast<__int128>(ib.profit) * ia.weight;
    return lhs != rhs ? lhs > rhs : a < b;
  });

  double value = 0.0;
  std::int64_t room = inst.capacity();
  for (ItemId k : order) {
    const Item& it = inst.item(k);
    if (it.weight <= room) {
      value += static_cast<double>(it.profit);
      room -= it.weight;
    } else {
      value += static_cast<double>(it.profit) * static_cast<double>(room) /
               static_cast<double>(it.weight);
      break;
    }
  }
  return UpperBound{value};
}

std::optional<Solution> brute_force_solve(const Instance& inst,
                                          BruteForceLimits limits) {
  const std::size_t n = inst.num_cities();
  const std::size_t m = inst.num_items();
  if (n > limits.max_cities || m > limits.max_items) {
    throw Error(ErrorKind::limit_exceeded,
                "instance too large for brute force (n=" + std::to_string(n) +
                    ", m=" + std::to_string(m) + ")");
  }

  const std::size_t middle = n - 2;
  std::vector<std::uint32_t> masks(std::size_t{1} << middle);
  std::iota(masks.begin(), masks.end(), 0u);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });

  std::optional<Solution> best;
  double best_time = 0.0;
  const double limit = inst.max_time() + kTimeTolerance;

  Route route;
  std::vector<ItemId> available;
  for (std::uint32_t mask : masks) {
    std::vector<CityId> visit;
    for (std::size_t c = 0; c < middle; ++c) {
      if (mask & (1u << c)) visit.push_back(c + 1);
    }
    do {
      route.cities.clear();
      route.cities.push_back(inst.start());
      route.cities.insert(route.cities.end(), visit.begin(), visit.end());
      route.cities.push_back(inst.end());

      available.clear();
      for (CityId c : visit) {
        for (ItemId k : inst.items_at(c)) available.push_back(k);
      }
      for (std::uint32_t pick = 0; pick < (1u << available.size()); ++pick) {
        PackingPlan plan(m);
        for (std::size_t b = 0; b < available.size(); ++b) {
          if (pick & (1u << b)) plan.pick(inst.item(available[b]));
        }
        if (plan.total_weight() > inst.capacity()) continue;
        const double t = travel_time(inst, route, plan);
        if (t > limit) continue;

        bool better = !best;
        if (!better) {
          const auto profit = plan.total_profit();
          const auto best_profit = best->plan.total_profit();
          better = profit > best_profit ||
                   (profit == best_profit &&
                    (t < best_time ||
                     (t == best_time && route.cities < best->route.cities)));
        }
        if (better) {
          best = Solution{route, std::move(plan)};
          best_time = t;
        }
      }
    } while (std::next_permutation(visit.begin(), visit.end()));
  }
  return best;
}

}  // namespace thop

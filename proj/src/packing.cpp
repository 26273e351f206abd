#include "thop/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thop/error.hpp"

namespace thop {

namespace {

struct Candidate {
  ItemId item;
  std::size_t position;  // index of the item's city in the route
  double log_profit;
  double log_weight;
  double log_distance;
};

// Route-dependent data shared by every attempt on the same route.
class PackingContext {
 public:
  PackingContext(const Instance& inst, const Route& route)
      : inst_(inst), route_(route) {
    const auto& c = route.cities;
    const std::size_t len = c.size();
    remaining_.assign(len, 0);
    std::int64_t min_leg = 0;
    for (std::size_t p = len - 1; p-- > 0;) {
      const std::int64_t leg = inst.dist(c[p], c[p + 1]);
      remaining_[p] = remaining_[p + 1] + leg;
      if (leg > 0 && (min_leg == 0 || leg < min_leg)) min_leg = leg;
    }
    if (min_leg == 0) min_leg = 1;

    for (std::size_t p = 0; p < len; ++p) {
      for (ItemId k : inst.items_at(c[p])) {
        const Item& it = inst.item(k);
        // A zero-profit item can only cost time and capacity.
        if (it.profit <= 0) continue;
        const std::int64_t d = remaining_[p] > 0 ? remaining_[p] : min_leg;
        candidates_.push_back(Candidate{k, p, std::log(double(it.profit)),
                                        std::log(double(it.weight)),
                                        std::log(double(d))});
      }
    }
    order_.resize(candidates_.size());
    scores_.resize(candidates_.size());
  }

  PackingPlan attempt(double a, double b, double c) {
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      const Candidate& cand = candidates_[i];
      scores_[i] = a * cand.log_profit - b * cand.log_weight -
                   c * cand.log_distance;
      order_[i] = i;
    }
    std::sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      if (scores_[x] != scores_[y]) return scores_[x] > scores_[y];
      return candidates_[x].item < candidates_[y].item;
    });
    return insert_greedily();
  }

 private:
  // Arrival times and departing weights are kept per route position; a trial
  // insertion at position p recomputes only the suffix, with the exact same
  // operation sequence as evaluate().
  PackingPlan insert_greedily() {
    const auto& c = route_.cities;
    const std::size_t len = c.size();
    const double vmax = inst_.max_speed();
    const double nu = inst_.nu();
    const double limit = inst_.max_time() + kTimeTolerance;

    weight_.assign(len, 0);
    arrival_.assign(len, 0.0);
    for (std::size_t p = 1; p < len; ++p) {
      arrival_[p] = arrival_[p - 1] + double(inst_.dist(c[p - 1], c[p])) / vmax;
    }

    PackingPlan plan(inst_.num_items());
    if (arrival_[len - 1] > limit) return plan;

    for (std::size_t idx : order_) {
      const Candidate& cand = candidates_[idx];
      const Item& it = inst_.item(cand.item);
      if (plan.total_weight() + it.weight > inst_.capacity()) continue;

      double t = arrival_[cand.position];
      for (std::size_t p = cand.position; p + 1 < len; ++p) {
        t += double(inst_.dist(c[p], c[p + 1])) /
             (vmax - nu * double(weight_[p] + it.weight));
        if (t > limit) break;
      }
      if (t > limit) continue;

      plan.pick(it);
      for (std::size_t p = cand.position; p < len; ++p) weight_[p] += it.weight;
      for (std::size_t p = cand.position; p + 1 < len; ++p) {
        arrival_[p + 1] = arrival_[p] + double(inst_.dist(c[p], c[p + 1])) /
                                            (vmax - nu * double(weight_[p]));
      }
    }
    return plan;
  }

  const Instance& inst_;
  const Route& route_;
  std::vector<std::int64_t> remaining_;
  std::vector<Candidate> candidates_;
  std::vector<std::size_t> order_;
  std::vector<double> scores_;
  std::vector<std::int64_t> weight_;
  std::vector<double> arrival_;
};

}  // namespace

PackingPlan pack(const Instance& inst, const Route& route,
                 const PackingParams& params, Rng& rng) {
  if (params.ptries < 1) {
    throw Error(ErrorKind::invalid_argument, "ptries must be at least 1");
  }
  if (params.perturbation_width < 0.0) {
    throw Error(ErrorKind::invalid_argument,
                "perturbation width must be non-negative");
  }
  PackingContext ctx(inst, route);
  const double width = params.perturbation_width;
  const PackExponents& e = params.exponents;

  PackingPlan best;
  for (int attempt = 0; attempt < params.ptries; ++attempt) {
    const double da = uniform(rng, -width, width);
    const double db = uniform(rng, -width, width);
    const double dc = uniform(rng, -width, width);
    PackingPlan plan = ctx.attempt(e.profit + da, e.weight + db, e.distance + dc);
    if (attempt == 0 || plan.total_profit() > best.total_profit()) {
      best = std::move(plan);
    }
  }
  return best;
}

PackingPlan pack_deterministic(const Instance& inst, const Route& route,
                               const PackExponents& exponents) {
  PackingContext ctx(inst, route);
  return ctx.attempt(exponents.profit, exponents.weight, exponents.distance);
}

}  // namespace thop

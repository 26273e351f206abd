#include "thop/aco.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "thop/error.hpp"

namespace thop {

std::optional<LocalSearch> parse_local_search(std::string_view name) {
  if (name == "none" || name == "0") return LocalSearch::none;
  if (name == "2opt" || name == "1") return LocalSearch::two_opt;
  if (name == "2.5opt" || name == "2") return LocalSearch::two_half_opt;
  if (name == "3opt" || name == "3") return LocalSearch::three_opt;
  return std::nullopt;
}

std::string_view to_string(LocalSearch kind) {
  switch (kind) {
    case LocalSearch::none: return "none";
    case LocalSearch::two_opt: return "2opt";
    case LocalSearch::two_half_opt: return "2.5opt";
    case LocalSearch::three_opt: return "3opt";
  }
  return "none";
}

CandidateLists::CandidateLists(const Instance& inst, std::size_t k) {
  const std::size_t n = inst.num_cities();
  lists_.resize(n);
  std::vector<CityId> others;
  for (CityId i = 0; i < n; ++i) {
    others.clear();
    for (CityId j = 1; j < n; ++j) {
      if (j != i) others.push_back(j);
    }
    const std::size_t keep = std::min(k, others.size());
    std::partial_sort(others.begin(), others.begin() + keep, others.end(),
                      [&](CityId a, CityId b) {
                        const auto da = inst.dist(i, a);
                        const auto db = inst.dist(i, b);
                        return da != db ? da < db : a < b;
                      });
    lists_[i].assign(others.begin(), others.begin() + keep);
  }
}

PheromoneBounds mmas_bounds(const UpperBound& ub, double best_profit,
                            double rho, std::size_t num_cities) {
  const double evaporation = std::max(rho, 0.01);
  PheromoneBounds b;
  b.tau_max = 1.0 / (evaporation * (ub.value + 1.0 - best_profit));
  b.tau_min = b.tau_max / (2.0 * static_cast<double>(num_cities));
  return b;
}

PheromoneState::PheromoneState(std::size_t num_cities, PheromoneBounds bounds)
    : n_(num_cities), bounds_(bounds), tau_(num_cities * num_cities, bounds.tau_max) {
  if (bounds.tau_min > bounds.tau_max) {
    throw Error(ErrorKind::invalid_argument, "tau_min exceeds tau_max");
  }
}

void PheromoneState::fill(double value) {
  std::fill(tau_.begin(), tau_.end(), value);
}

void PheromoneState::evaporate(double rho) {
  const double keep = 1.0 - rho;
  for (double& t : tau_) t *= keep;
}

void PheromoneState::deposit(const Route& route, double amount) {
  const auto& c = route.cities;
  for (std::size_t p = 1; p < c.size(); ++p) {
    tau_[c[p - 1] * n_ + c[p]] += amount;
    tau_[c[p] * n_ + c[p - 1]] = tau_[c[p - 1] * n_ + c[p]];
  }
}

void PheromoneState::clamp() {
  for (double& t : tau_) t = std::clamp(t, bounds_.tau_min, bounds_.tau_max);
}

double PheromoneState::min_trail() const {
  return *std::min_element(tau_.begin(), tau_.end());
}

double PheromoneState::max_trail() const {
  return *std::max_element(tau_.begin(), tau_.end());
}

ChoiceInfo::ChoiceInfo(const Instance& inst, double beta)
    : n_(inst.num_cities()), heuristic_(n_ * n_, 0.0), total_(n_ * n_, 0.0) {
  for (CityId i = 0; i < n_; ++i) {
    for (CityId j = 0; j < n_; ++j) {
      if (i == j) continue;
      const double d = static_cast<double>(std::max<std::int64_t>(inst.dist(i, j), 1));
      heuristic_[i * n_ + j] = std::pow(1.0 / d, beta);
    }
  }
}

void ChoiceInfo::update(const PheromoneState& pher, double alpha) {
  for (CityId i = 0; i < n_; ++i) {
    for (CityId j = 0; j < n_; ++j) {
      const double tau = pher.trail(i, j);
      const double weight = alpha == 1.0 ? tau : std::pow(tau, alpha);
      total_[i * n_ + j] = weight * heuristic_[i * n_ + j];
    }
  }
}

Route construct_route(const Instance& inst, const ChoiceInfo& choice,
                      const CandidateLists& candidates, Rng& rng) {
  const std::size_t n = inst.num_cities();
  const CityId end = inst.end();
  Route route;
  route.cities.push_back(inst.start());
  std::vector<std::uint8_t> visited(n, 0);
  visited[inst.start()] = 1;

  std::vector<CityId> options;
  std::vector<double> weights;
  CityId current = inst.start();
  while (current != end) {
    options.clear();
    for (CityId j : candidates[current]) {
      if (!visited[j] && j != end) options.push_back(j);
    }
    if (options.empty()) {
      for (CityId j = 1; j < n; ++j) {
        if (!visited[j] && j != end) options.push_back(j);
      }
    }
    options.push_back(end);

    weights.resize(options.size());
    double sum = 0.0;
    for (std::size_t o = 0; o < options.size(); ++o) {
      weights[o] = choice(current, options[o]);
      sum += weights[o];
    }

    CityId next = options.back();
    if (sum > 0.0 && std::isfinite(sum)) {
      double r = uniform01(rng) * sum;
      for (std::size_t o = 0; o < options.size(); ++o) {
        r -= weights[o];
        if (r < 0.0) {
          next = options[o];
          break;
        }
      }
    } else {
      // Degenerate weights (underflow or overflow): take the best-looking
      // option, breaking ties by distance.
      std::size_t best = 0;
      for (std::size_t o = 1; o < options.size(); ++o) {
        if (weights[o] > weights[best] ||
            (weights[o] == weights[best] &&
             inst.dist(current, options[o]) < inst.dist(current, options[best]))) {
          best = o;
        }
      }
      next = options[best];
    }
    visited[next] = 1;
    route.cities.push_back(next);
    current = next;
  }
  return route;
}

Route construct_route(const Instance& inst, const PheromoneState& pher,
                      const AcoParams& params, Rng& rng) {
  ChoiceInfo choice(inst, params.beta);
  choice.update(pher, params.alpha);
  const CandidateLists candidates(inst, params.candidates);
  return construct_route(inst, choice, candidates, rng);
}

double fitness(const UpperBound& ub, double profit) {
  if (profit > ub.value + 1e-9 * std::max(1.0, std::abs(ub.value))) {
    throw Error(ErrorKind::bound_violation,
                "profit exceeds the fractional knapsack upper bound");
  }
  return 1.0 / (ub.value + 1.0 - profit);
}

void update_pheromones(PheromoneState& pher, const Route& route,
                       double deposit, const AcoParams& params) {
  pher.evaporate(params.rho);
  pher.deposit(route, deposit);
  pher.clamp();
}

}  // namespace thop

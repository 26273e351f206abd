#pragma once

#include <array>

#include "thop/evaluation.hpp"
#include "thop/instance.hpp"
#include "thop/random.hpp"

namespace thop {

// Exponents of the item score p^A / (w^B * d^C), where d is the distance
// still to travel along the route from the item's city to the end city.
struct PackExponents {
  double profit = 1.0;
  double weight = 1.0;
  double distance = 1.0;
};

struct PackingParams {
  int ptries = 1;
  PackExponents exponents;
  // Each attempt adds Uniform(-width, +width) noise to every exponent.
  double perturbation_width = 0.2;
};

// Randomized packing: best of `ptries` greedy attempts, each with perturbed
// exponents drawn from `rng`. Items are inserted in descending score order
// and skipped when they would break the capacity or the time limit. The
// result is always feasible for `route` (empty if nothing fits).
PackingPlan pack(const Instance& inst, const Route& route,
                 const PackingParams& params, Rng& rng);

// One unperturbed greedy attempt.
PackingPlan pack_deterministic(const Instance& inst, const Route& route,
                               const PackExponents& exponents);

}  // namespace thop

#pragma once

#include <cstddef>
#include <optional>

#include "thop/evaluation.hpp"
#include "thop/instance.hpp"

namespace thop {

struct UpperBound {
  double value = 0.0;
};

// Optimal fractional-knapsack value over all items with capacity W. Ignores
// routing and time, so it dominates every feasible ThOP profit.
UpperBound fractional_kp_ub(const Instance& inst);

struct BruteForceLimits {
  std::size_t max_cities = 8;
  std::size_t max_items = 8;
};

// Exhaustive optimum over every ordered subset of intermediate cities crossed
// with every item subset available on that route. Ties prefer shorter travel
// time, then the lexicographically smaller route. Returns nullopt when not
// even the direct route start -> end fits in T. Throws Error(limit_exceeded)
// when the instance is larger than `limits`.
std::optional<Solution> brute_force_solve(const Instance& inst,
                                          BruteForceLimits limits = {});

}  // namespace thop

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thop/evaluation.hpp"
#include "thop/instance.hpp"

namespace thop {

// Arc set: (i, j) for i != end, j not in {start, i}.
std::vector<std::pair<CityId, CityId>> model_arcs(const Instance& inst);

// Values of the mathematical-programming variables. x is a dense n x n
// matrix, only entries on model_arcs() are meaningful. Binaries are kept as
// integers so out-of-domain values can be represented and rejected.
struct ModelVariables {
  std::size_t num_cities = 0;
  std::vector<int> x;
  std::vector<int> y;
  std::vector<int> z;
  std::vector<double> q;  // weight after leaving city i
  std::vector<double> t;  // arrival time at city i

  explicit ModelVariables(std::size_t n = 0, std::size_t m = 0)
      : num_cities(n), x(n * n, 0), y(n, 0), z(m, 0), q(n, 0.0), t(n, 0.0) {}

  int& arc(CityId i, CityId j) { return x[i * num_cities + j]; }
  int arc(CityId i, CityId j) const { return x[i * num_cities + j]; }
};

struct BigM {
  std::vector<double> weight;  // M'_j = W + sum of item weights at j
  std::vector<double> time;    // M''_ij = T + d_ij / vmin, dense n x n
  std::size_t num_cities = 0;

  double time_at(CityId i, CityId j) const { return time[i * num_cities + j]; }
};

BigM big_m(const Instance& inst);

// Maps a feasible <route, plan> onto model variables. Throws for infeasible
// input.
ModelVariables lift_solution(const Instance& inst, const Route& route,
                             const PackingPlan& plan);

struct ConstraintCheck {
  int family = 0;  // 1..13
  std::string name;
  bool passed = true;
  std::string first_violation;  // empty when passed
};

struct VerificationReport {
  std::vector<ConstraintCheck> checks;

  bool passed() const;
  const ConstraintCheck& family(int id) const;
  std::string str() const;
};

inline constexpr double kModelTolerance = 1e-6;

// Checks all thirteen constraint families independently. Family 8 uses the
// nonlinear time recurrence directly.
VerificationReport verify(const Instance& inst, const ModelVariables& vars);

enum class Sense { le, ge, eq };

struct LinearTerm {
  double coef = 0.0;
  std::string var;
};

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::le;
  double rhs = 0.0;
};

struct VariableBound {
  std::string var;
  double lower = 0.0;
  double upper = 0.0;
};

struct MinlpModel {
  std::string name;
  std::vector<LinearTerm> objective;  // maximized
  std::vector<LinearConstraint> constraints;
  // The Big-M time constraints have no linear form; kept as text.
  std::vector<std::pair<std::string, std::string>> nonlinear;
  std::vector<VariableBound> bounds;
  std::vector<std::string> binaries;
};

MinlpModel build_model(const Instance& inst);

// LP-style text: MAXIMIZE / SUBJECT TO / BOUNDS / BINARY / END sections,
// nonlinear constraints as "\ NONLINEAR name: expression" comment lines.
std::string write_model(const MinlpModel& model);
std::string export_model(const Instance& inst);

struct ModelSummary {
  std::size_t objective_terms = 0;
  std::size_t constraints = 0;
  std::size_t nonlinear = 0;
  std::size_t bounds = 0;
  std::size_t binaries = 0;
};

// Reader for the text produced by write_model(). Throws ParseError.
ModelSummary read_model(std::string_view text);

}  // namespace thop

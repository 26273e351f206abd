#include "thop/minlp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thop/error.hpp"
#include "text_util.hpp"

namespace thop {

namespace {

std::string x_name(CityId i, CityId j) {
  return "x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}
std::string y_name(CityId i) { return "y_" + std::to_string(i + 1); }
std::string z_name(ItemId k) { return "z_" + std::to_string(k + 1); }
std::string q_name(CityId i) { return "q_" + std::to_string(i + 1); }
std::string t_name(CityId i) { return "t_" + std::to_string(i + 1); }

bool in_arc_set(const Instance& inst, CityId i, CityId j) {
  return i != inst.end() && j != inst.start() && i != j;
}

class FamilyCheck {
 public:
  FamilyCheck(int family, std::string name) {
    check_.family = family;
    check_.name = std::move(name);
  }
  void require(bool ok, const std::string& where) {
    if (!ok && check_.passed) {
      check_.passed = false;
      check_.first_violation = where;
    }
  }
  ConstraintCheck done() { return std::move(check_); }

 private:
  ConstraintCheck check_;
};

}  // namespace

std::vector<std::pair<CityId, CityId>> model_arcs(const Instance& inst) {
  std::vector<std::pair<CityId, CityId>> arcs;
  const std::size_t n = inst.num_cities();
  for (CityId i = 0; i < n; ++i) {
    for (CityId j = 0; j < n; ++j) {
      if (in_arc_set(inst, i, j)) arcs.emplace_back(i, j);
    }
  }
  return arcs;
}

BigM big_m(const Instance& inst) {
  const std::size_t n = inst.num_cities();
  BigM m;
  m.num_cities = n;
  m.weight.assign(n, static_cast<double>(inst.capacity()));
  for (const Item& it : inst.items()) m.weight[it.city] += double(it.weight);
  m.time.assign(n * n, 0.0);
  for (CityId i = 0; i < n; ++i) {
    for (CityId j = 0; j < n; ++j) {
      if (i == j) continue;
      m.time[i * n + j] = inst.max_time() + double(inst.dist(i, j)) / inst.min_speed();
    }
  }
  return m;
}

ModelVariables lift_solution(const Instance& inst, const Route& route,
                             const PackingPlan& plan) {
  const Evaluation ev = evaluate(inst, route, plan, /*strict=*/true);
  ModelVariables v(inst.num_cities(), inst.num_items());
  const auto& c = route.cities;
  for (std::size_t p = 1; p < c.size(); ++p) v.arc(c[p - 1], c[p]) = 1;
  for (const Leg& leg : ev.legs) {
    v.y[leg.city] = 1;
    v.q[leg.city] = static_cast<double>(leg.departing_weight);
    v.t[leg.city] = leg.arrival;
  }
  for (ItemId k = 0; k < inst.num_items(); ++k) v.z[k] = plan.picked(k) ? 1 : 0;
  return v;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConstraintCheck& c) { return c.passed; });
}

const ConstraintCheck& VerificationReport::family(int id) const {
  for (const ConstraintCheck& c : checks) {
    if (c.family == id) return c;
  }
  throw Error(ErrorKind::invalid_argument, "no constraint family " + std::to_string(id));
}

std::string VerificationReport::str() const {
  std::ostringstream out;
  for (const ConstraintCheck& c : checks) {
    out << "(" << c.family << ") " << c.name << ": "
        << (c.passed ? "pass" : "FAIL at " + c.first_violation) << '\n';
  }
  out << (passed() ? "all constraints satisfied" : "constraint violations found")
      << '\n';
  return out.str();
}

VerificationReport verify(const Instance& inst, const ModelVariables& v) {
  const std::size_t n = inst.num_cities();
  const std::size_t m = inst.num_items();
  if (v.num_cities != n || v.x.size() != n * n || v.y.size() != n ||
      v.z.size() != m || v.q.size() != n || v.t.size() != n) {
    throw Error(ErrorKind::invalid_argument, "model variables do not match the instance");
  }
  const double eps = kModelTolerance;
  const auto arcs = model_arcs(inst);
  auto loaded = [&](CityId j) {
    double w = 0.0;
    for (ItemId k : inst.items_at(j)) w += double(inst.item(k).weight) * v.z[k];
    return w;
  };

  VerificationReport report;

  FamilyCheck f1(1, "capacity");
  double total = 0.0;
  for (ItemId k = 0; k < m; ++k) total += double(inst.item(k).weight) * v.z[k];
  f1.require(total <= double(inst.capacity()) + eps, "total weight " + detail::format_double(total));
  report.checks.push_back(f1.done());

  FamilyCheck f2(2, "pick implies visit");
  for (ItemId k = 0; k < m; ++k) {
    f2.require(v.y[inst.item(k).city] >= v.z[k], "item " + std::to_string(k + 1));
  }
  report.checks.push_back(f2.done());

  FamilyCheck f3(3, "visit implies pick");
  for (CityId i = 1; i + 1 < n; ++i) {
    int picks = 0;
    for (ItemId k : inst.items_at(i)) picks += v.z[k];
    f3.require(v.y[i] <= picks, "city " + std::to_string(i + 1));
  }
  report.checks.push_back(f3.done());

  FamilyCheck f4(4, "start and end visited");
  f4.require(v.y[inst.start()] == 1, "city 1");
  f4.require(v.y[inst.end()] == 1, "city " + std::to_string(n));
  report.checks.push_back(f4.done());

  FamilyCheck f5(5, "out-degree");
  FamilyCheck f6(6, "in-degree");
  std::vector<int> out_deg(n, 0), in_deg(n, 0);
  for (auto [i, j] : arcs) {
    out_deg[i] += v.arc(i, j);
    in_deg[j] += v.arc(i, j);
  }
  for (CityId i = 0; i < n; ++i) {
    if (i != inst.end()) f5.require(out_deg[i] == v.y[i], "city " + std::to_string(i + 1));
    if (i != inst.start()) f6.require(in_deg[i] == v.y[i], "city " + std::to_string(i + 1));
  }
  report.checks.push_back(f5.done());
  report.checks.push_back(f6.done());

  FamilyCheck f7(7, "weight recurrence");
  FamilyCheck f8(8, "time recurrence");
  for (auto [i, j] : arcs) {
    const int xij = v.arc(i, j);
    const std::string where = "arc (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    f7.require(v.q[j] >= (v.q[i] + loaded(j)) * xij - eps, where);
    if (xij != 0) {
      const double sp = inst.max_speed() - inst.nu() * v.q[i];
      f8.require(sp > 0.0 && v.t[j] >= (v.t[i] + double(inst.dist(i, j)) / sp) * xij - eps,
                 where);
    }
  }
  report.checks.push_back(f7.done());
  report.checks.push_back(f8.done());

  FamilyCheck f9(9, "x binary");
  for (CityId i = 0; i < n; ++i) {
    for (CityId j = 0; j < n; ++j) {
      const int xij = v.arc(i, j);
      const std::string where = "arc (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (in_arc_set(inst, i, j)) {
        f9.require(xij == 0 || xij == 1, where);
      } else {
        f9.require(xij == 0, where + " outside the arc set");
      }
    }
  }
  report.checks.push_back(f9.done());

  FamilyCheck f10(10, "y binary");
  for (CityId i = 0; i < n; ++i) {
    f10.require(v.y[i] == 0 || v.y[i] == 1, "city " + std::to_string(i + 1));
  }
  report.checks.push_back(f10.done());

  FamilyCheck f11(11, "z binary");
  for (ItemId k = 0; k < m; ++k) {
    f11.require(v.z[k] == 0 || v.z[k] == 1, "item " + std::to_string(k + 1));
  }
  report.checks.push_back(f11.done());

  FamilyCheck f12(12, "weight domain");
  for (CityId i = 0; i < n; ++i) {
    f12.require(v.q[i] >= -eps && v.q[i] <= double(inst.capacity()) + eps,
                "city " + std::to_string(i + 1));
  }
  report.checks.push_back(f12.done());

  FamilyCheck f13(13, "time domain");
  for (CityId i = 0; i < n; ++i) {
    f13.require(v.t[i] >= -eps && v.t[i] <= inst.max_time() + eps,
                "city " + std::to_string(i + 1));
  }
  report.checks.push_back(f13.done());
  return report;
}

MinlpModel build_model(const Instance& inst) {
  const std::size_t n = inst.num_cities();
  const std::size_t m = inst.num_items();
  const BigM bm = big_m(inst);
  const auto arcs = model_arcs(inst);
  MinlpModel model;
  model.name = inst.name();

  for (ItemId k = 0; k < m; ++k) {
    model.objective.push_back({double(inst.item(k).profit), z_name(k)});
  }

  LinearConstraint cap{"c1_capacity", {}, Sense::le, double(inst.capacity())};
  for (ItemId k = 0; k < m; ++k) {
    cap.terms.push_back({double(inst.item(k).weight), z_name(k)});
  }
  model.constraints.push_back(std::move(cap));

  for (ItemId k = 0; k < m; ++k) {
    model.constraints.push_back(
        {"c2_pick_visit_" + std::to_string(k + 1),
         {{1.0, y_name(inst.item(k).city)}, {-1.0, z_name(k)}},
         Sense::ge,
         0.0});
  }
  for (CityId i = 1; i + 1 < n; ++i) {
    LinearConstraint c{"c3_visit_pick_" + std::to_string(i + 1), {{1.0, y_name(i)}},
                       Sense::le, 0.0};
    for (ItemId k : inst.items_at(i)) c.terms.push_back({-1.0, z_name(k)});
    model.constraints.push_back(std::move(c));
  }
  model.constraints.push_back({"c4_start", {{1.0, y_name(inst.start())}}, Sense::eq, 1.0});
  model.constraints.push_back({"c4_end", {{1.0, y_name(inst.end())}}, Sense::eq, 1.0});

  for (CityId i = 0; i < n; ++i) {
    if (i == inst.end()) continue;
    LinearConstraint c{"c5_out_" + std::to_string(i + 1), {}, Sense::eq, 0.0};
    for (auto [a, b] : arcs) {
      if (a == i) c.terms.push_back({1.0, x_name(a, b)});
    }
    c.terms.push_back({-1.0, y_name(i)});
    model.constraints.push_back(std::move(c));
  }
  for (CityId j = 0; j < n; ++j) {
    if (j == inst.start()) continue;
    LinearConstraint c{"c6_in_" + std::to_string(j + 1), {}, Sense::eq, 0.0};
    for (auto [a, b] : arcs) {
      if (b == j) c.terms.push_back({1.0, x_name(a, b)});
    }
    c.terms.push_back({-1.0, y_name(j)});
    model.constraints.push_back(std::move(c));
  }

  // q_j - q_i - sum(w_k z_k, k at j) - M'_j x_ij >= -M'_j
  for (auto [i, j] : arcs) {
    const std::string suffix = std::to_string(i + 1) + "_" + std::to_string(j + 1);
    LinearConstraint c{"c14_weight_" + suffix, {{1.0, q_name(j)}, {-1.0, q_name(i)}},
                       Sense::ge, -bm.weight[j]};
    for (ItemId k : inst.items_at(j)) {
      c.terms.push_back({-double(inst.item(k).weight), z_name(k)});
    }
    c.terms.push_back({-bm.weight[j], x_name(i, j)});
    model.constraints.push_back(std::move(c));

    std::ostringstream expr;
    expr << t_name(j) << " >= " << t_name(i) << " + " << inst.dist(i, j) << " / ("
         << detail::format_double(inst.max_speed()) << " - "
         << detail::format_double(inst.nu()) << " * " << q_name(i) << ") - "
         << detail::format_double(bm.time_at(i, j)) << " * (1 - " << x_name(i, j) << ")";
    model.nonlinear.emplace_back("c15_time_" + suffix, expr.str());
  }

  for (CityId i = 0; i < n; ++i) {
    model.bounds.push_back({q_name(i), 0.0, double(inst.capacity())});
  }
  for (CityId i = 0; i < n; ++i) {
    model.bounds.push_back({t_name(i), 0.0, inst.max_time()});
  }
  for (auto [i, j] : arcs) model.binaries.push_back(x_name(i, j));
  for (CityId i = 0; i < n; ++i) model.binaries.push_back(y_name(i));
  for (ItemId k = 0; k < m; ++k) model.binaries.push_back(z_name(k));
  return model;
}

namespace {

void write_terms(std::ostringstream& out, const std::vector<LinearTerm>& terms) {
  for (const LinearTerm& t : terms) {
    out << (t.coef < 0 ? " - " : " + ") << detail::format_double(std::abs(t.coef))
        << ' ' << t.var;
  }
}

}  // namespace

std::string write_model(const MinlpModel& model) {
  std::ostringstream out;
  out << "\\ ThOP model " << model.name << '\n';
  out << "MAXIMIZE\n obj:";
  write_terms(out, model.objective);
  out << "\nSUBJECT TO\n";
  for (const LinearConstraint& c : model.constraints) {
    out << ' ' << c.name << ':';
    write_terms(out, c.terms);
    out << (c.sense == Sense::le ? " <= " : c.sense == Sense::ge ? " >= " : " = ")
        << detail::format_double(c.rhs) << '\n';
  }
  for (const auto& [name, expr] : model.nonlinear) {
    out << "\\ NONLINEAR " << name << ": " << expr << '\n';
  }
  out << "BOUNDS\n";
  for (const VariableBound& b : model.bounds) {
    out << ' ' << detail::format_double(b.lower) << " <= " << b.var
        << " <= " << detail::format_double(b.upper) << '\n';
  }
  out << "BINARY\n";
  for (const std::string& v : model.binaries) out << ' ' << v << '\n';
  out << "END\n";
  return out.str();
}

std::string export_model(const Instance& inst) {
  return write_model(build_model(inst));
}

ModelSummary read_model(std::string_view text) {
  enum class Part { none, objective, constraints, bounds, binary, end };
  Part part = Part::none;
  ModelSummary s;
  std::size_t line_no = 0;

  auto count_terms = [&](std::string_view expr) {
    // Alternating sign / coefficient / variable triples.
    const auto fields = detail::split_ws(expr);
    if (fields.size() % 3 != 0) throw ParseError(line_no, "malformed linear expression");
    for (std::size_t f = 0; f < fields.size(); f += 3) {
      double coef = 0.0;
      if ((fields[f] != "+" && fields[f] != "-") ||
          !detail::parse_number(fields[f + 1], coef)) {
        throw ParseError(line_no, "malformed term");
      }
    }
    return fields.size() / 3;
  };

  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.starts_with("\\")) {
      if (line.starts_with("\\ NONLINEAR ")) ++s.nonlinear;
      continue;
    }
    if (line == "MAXIMIZE") { part = Part::objective; continue; }
    if (line == "SUBJECT TO") { part = Part::constraints; continue; }
    if (line == "BOUNDS") { part = Part::bounds; continue; }
    if (line == "BINARY") { part = Part::binary; continue; }
    if (line == "END") { part = Part::end; continue; }

    switch (part) {
      case Part::objective: {
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, "objective needs a name");
        s.objective_terms += count_terms(line.substr(colon + 1));
        break;
      }
      case Part::constraints: {
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, "constraint needs a name");
        const auto body = line.substr(colon + 1);
        std::size_t op = std::string_view::npos, op_len = 0;
        for (std::string_view sense : {" <= ", " >= ", " = "}) {
          op = body.find(sense);
          if (op != std::string_view::npos) {
            op_len = sense.size();
            break;
          }
        }
        double rhs = 0.0;
        if (op == std::string_view::npos ||
            !detail::parse_number(body.substr(op + op_len), rhs)) {
          throw ParseError(line_no, "constraint needs a sense and a numeric right-hand side");
        }
        count_terms(body.substr(0, op));
        ++s.constraints;
        break;
      }
      case Part::bounds: {
        const auto fields = detail::split_ws(line);
        double lo = 0.0, hi = 0.0;
        if (fields.size() != 5 || fields[1] != "<=" || fields[3] != "<=" ||
            !detail::parse_number(fields[0], lo) || !detail::parse_number(fields[4], hi)) {
          throw ParseError(line_no, "malformed bound");
        }
        ++s.bounds;
        break;
      }
      case Part::binary:
        s.binaries += detail::split_ws(line).size();
        break;
      case Part::none:
      case Part::end:
        throw ParseError(line_no, "content outside a model section");
    }
  }
  if (part != Part::end) throw ParseError(line_no, "missing END");
  return s;
}

}  // namespace thop

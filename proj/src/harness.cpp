#include "thop/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "thop/error.hpp"
#include "text_util.hpp"

namespace thop {

namespace {

template <typename T>
T number_or_throw(std::string_view key, std::string_view value) {
  T v{};
  if (!detail::parse_number(value, v)) {
    throw Error(ErrorKind::invalid_argument,
                "invalid value '" + std::string(value) + "' for " + std::string(key));
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw Error(ErrorKind::invalid_argument,
              "invalid value '" + std::string(value) + "' for " + std::string(key));
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt(double v) { return detail::format_double(v); }

}  // namespace

void apply_parameter(SolverConfig& cfg, std::string_view key,
                     std::string_view value) {
  value = detail::trim(value);
  if (key == "ants") {
    cfg.aco.ants = number_or_throw<int>(key, value);
  } else if (key == "alpha") {
    cfg.aco.alpha = number_or_throw<double>(key, value);
  } else if (key == "beta") {
    cfg.aco.beta = number_or_throw<double>(key, value);
  } else if (key == "rho") {
    cfg.aco.rho = number_or_throw<double>(key, value);
  } else if (key == "localsearch") {
    const auto kind = parse_local_search(value);
    if (!kind) {
      throw Error(ErrorKind::invalid_argument,
                  "localsearch must be one of none, 2opt, 2.5opt, 3opt");
    }
    cfg.aco.local_search = *kind;
  } else if (key == "candidates") {
    cfg.aco.candidates = number_or_throw<std::size_t>(key, value);
  } else if (key == "ptries") {
    cfg.packing.ptries = number_or_throw<int>(key, value);
  } else if (key == "pack_exponents") {
    const auto parts = detail::split(value, ',');
    if (parts.size() != 3) {
      throw Error(ErrorKind::invalid_argument, "pack_exponents expects A,B,C");
    }
    cfg.packing.exponents.profit = number_or_throw<double>(key, parts[0]);
    cfg.packing.exponents.weight = number_or_throw<double>(key, parts[1]);
    cfg.packing.exponents.distance = number_or_throw<double>(key, parts[2]);
  } else if (key == "pack_width") {
    cfg.packing.perturbation_width = number_or_throw<double>(key, value);
  } else if (key == "time") {
    cfg.time_budget_s = number_or_throw<double>(key, value);
  } else if (key == "seed") {
    cfg.seed = number_or_throw<std::uint64_t>(key, value);
  } else if (key == "threads") {
    cfg.threads = number_or_throw<unsigned>(key, value);
  } else if (key == "max_iterations") {
    cfg.max_iterations = number_or_throw<std::size_t>(key, value);
  } else if (key == "deterministic") {
    cfg.deterministic = parse_bool(key, value);
  } else {
    throw Error(ErrorKind::invalid_argument, "unknown parameter '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> read_profile(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = raw.substr(0, raw.find('#'));
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    out.emplace_back(std::string(detail::trim(line.substr(0, eq))),
                     std::string(detail::trim(line.substr(eq + 1))));
  }
  return out;
}

std::optional<std::string> find_profile(const std::string& dir,
                                        const std::string& instance_path) {
  if (dir.empty()) return std::nullopt;
  const auto id = InstanceId::parse(instance_path);
  if (!id) return std::nullopt;
  const auto path = std::filesystem::path(dir) / (id->group() + ".params");
  if (!std::filesystem::exists(path)) return std::nullopt;
  return path.string();
}

std::vector<std::string> domain_warnings(const SolverConfig& cfg) {
  std::vector<std::string> w;
  static const std::set<int> ant_grid = {10, 20, 50, 100, 200, 500, 1000};
  if (!ant_grid.contains(cfg.aco.ants)) {
    w.push_back("ants=" + std::to_string(cfg.aco.ants) + " is outside the tuning grid");
  }
  if (cfg.aco.alpha < 0.0 || cfg.aco.alpha > 10.0) w.push_back("alpha outside [0, 10]");
  if (cfg.aco.beta < 0.0 || cfg.aco.beta > 10.0) w.push_back("beta outside [0, 10]");
  if (cfg.aco.rho < 0.0 || cfg.aco.rho > 1.0) w.push_back("rho outside [0, 1]");
  if (cfg.packing.ptries < 1 || cfg.packing.ptries > 5) w.push_back("ptries outside [1, 5]");
  return w;
}

std::string parameter_echo(const SolverConfig& cfg) {
  std::ostringstream out;
  const PackExponents& e = cfg.packing.exponents;
  out << "ants=" << cfg.aco.ants << ";alpha=" << fmt(cfg.aco.alpha)
      << ";beta=" << fmt(cfg.aco.beta) << ";rho=" << fmt(cfg.aco.rho)
      << ";localsearch=" << to_string(cfg.aco.local_search)
      << ";candidates=" << cfg.aco.candidates << ";ptries=" << cfg.packing.ptries
      << ";pack_exponents=" << fmt(e.profit) << ',' << fmt(e.weight) << ','
      << fmt(e.distance) << ";pack_width=" << fmt(cfg.packing.perturbation_width)
      << ";time=" << fmt(cfg.time_budget_s);
  if (cfg.max_iterations) out << ";max_iterations=" << cfg.max_iterations;
  if (cfg.deterministic) out << ";deterministic=1";
  return out.str();
}

unsigned default_threads() {
  if (const char* env = std::getenv("THOP_THREADS")) {
    unsigned v = 0;
    if (detail::parse_number(env, v) && v > 0) return v;
  }
  return 1;
}

std::string run_key(const Instance& inst, std::uint64_t seed,
                    const std::string& params) {
  std::uint64_t h = fnv1a(write_instance(inst));
  h = fnv1a("|" + std::to_string(seed) + "|" + params, h);
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string results_csv_header() {
  return "key,instance,seed,profit,travel_time,elapsed_s,params\n";
}

std::string to_csv_row(const RunResult& r) {
  std::ostringstream out;
  out << r.key << ',' << r.instance << ',' << r.seed << ',' << r.profit << ','
      << fmt(r.travel_time) << ',' << fmt(r.elapsed_s) << ',' << r.params << '\n';
  return out.str();
}

std::vector<RunResult> read_results_csv(std::string_view text) {
  std::vector<RunResult> rows;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.starts_with("key,")) continue;
    // The params column is last and may itself contain commas.
    std::vector<std::string_view> f;
    std::size_t begin = 0;
    for (int i = 0; i < 6; ++i) {
      const auto pos = line.find(',', begin);
      if (pos == std::string_view::npos) throw ParseError(line_no, "expected 7 columns");
      f.push_back(line.substr(begin, pos - begin));
      begin = pos + 1;
    }
    RunResult r;
    r.key = std::string(f[0]);
    r.instance = std::string(f[1]);
    r.params = std::string(line.substr(begin));
    if (!detail::parse_number(f[2], r.seed) || !detail::parse_number(f[3], r.profit) ||
        !detail::parse_number(f[4], r.travel_time) ||
        !detail::parse_number(f[5], r.elapsed_s)) {
      throw ParseError(line_no, "malformed numeric column");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

SolverConfig resolve_config(
    const Instance& inst, const std::string& instance_path,
    const std::string& params_dir,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  SolverConfig cfg;
  cfg.threads = default_threads();
  cfg.time_budget_s = default_time_budget(inst);
  if (const auto profile = find_profile(params_dir, instance_path)) {
    for (const auto& [k, v] : read_profile(detail::read_file(*profile))) {
      apply_parameter(cfg, k, v);
    }
  }
  for (const auto& [k, v] : overrides) apply_parameter(cfg, k, v);
  return cfg;
}

SweepSummary sweep(const SweepOptions& opts) {
  if (opts.results_csv.empty()) {
    throw Error(ErrorKind::invalid_argument, "sweep needs a results file");
  }
  std::set<std::string> done;
  if (std::filesystem::exists(opts.results_csv)) {
    for (const RunResult& r : read_results_csv(detail::read_file(opts.results_csv))) {
      done.insert(r.key);
    }
  } else {
    detail::write_file(opts.results_csv, results_csv_header());
  }
  if (!opts.solutions_dir.empty()) {
    std::filesystem::create_directories(opts.solutions_dir);
  }

  struct Job {
    std::size_t instance;
    std::uint64_t seed;
  };
  struct Prepared {
    std::string id;
    Instance inst;
    SolverConfig cfg;
  };
  std::vector<Prepared> prepared;
  for (const std::string& path : opts.instances) {
    Instance inst = load_instance(path);
    const auto id = InstanceId::parse(path);
    if (opts.op_mode || (id && id->op_mode())) inst = to_op_instance(inst);
    SolverConfig cfg = resolve_config(inst, path, opts.params_dir, opts.overrides);
    std::string name = std::filesystem::path(path).stem().string();
    prepared.push_back(Prepared{std::move(name), std::move(inst), cfg});
  }

  SweepSummary summary;
  std::vector<Job> jobs;
  std::vector<std::string> keys;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    for (unsigned s = 0; s < opts.seeds; ++s) {
      const std::uint64_t seed = opts.first_seed + s;
      SolverConfig cfg = prepared[i].cfg;
      cfg.seed = seed;
      std::string key = run_key(prepared[i].inst, seed, parameter_echo(cfg));
      if (done.contains(key)) {
        ++summary.skipped;
        continue;
      }
      jobs.push_back(Job{i, seed});
      keys.push_back(std::move(key));
    }
  }

  std::mutex out_mutex;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      try {
        const Prepared& p = prepared[jobs[j].instance];
        SolverConfig cfg = p.cfg;
        cfg.seed = jobs[j].seed;
        const SolveResult res = solve(p.inst, cfg);
        RunResult row;
        row.key = keys[j];
        row.instance = p.id;
        row.seed = cfg.seed;
        row.profit = res.status == SolveStatus::ok ? res.best.plan.total_profit() : 0;
        row.travel_time = res.evaluation.travel_time;
        row.elapsed_s = res.log.elapsed_s;
        row.params = parameter_echo(cfg);

        std::lock_guard lock(out_mutex);
        if (!opts.solutions_dir.empty() && res.status == SolveStatus::ok) {
          const auto file = std::filesystem::path(opts.solutions_dir) /
                            (p.id + "_seed" + std::to_string(cfg.seed) + ".sol");
          detail::write_file(file.string(), write_solution(res.best));
        }
        std::ofstream out(opts.results_csv, std::ios::app);
        out << to_csv_row(row);
        if (!out) throw Error(ErrorKind::io, "cannot append to " + opts.results_csv);
        ++summary.executed;
      } catch (...) {
        std::lock_guard lock(out_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned workers = std::max(1u, opts.workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return summary;
}

std::map<std::string, double> read_reference_csv(std::string_view text) {
  std::map<std::string, double> ref;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    const auto f = detail::split(line, ',');
    double best = 0.0;
    if (f.size() < 2 || !detail::parse_number(f[1], best)) {
      if (line_no == 1) continue;  // header
      throw ParseError(line_no, "expected instance,best");
    }
    ref[std::string(detail::trim(f[0]))] = best;
  }
  return ref;
}

AggregateReport aggregate(const std::vector<RunResult>& results,
                          const std::map<std::string, double>& reference) {
  std::map<std::string, std::vector<const RunResult*>> by_instance;
  for (const RunResult& r : results) by_instance[r.instance].push_back(&r);

  AggregateReport report;
  for (const auto& [name, runs] : by_instance) {
    AggregateRow row;
    row.instance = name;
    row.runs = runs.size();
    double sum = 0.0;
    row.best_profit = runs.front()->profit;
    for (const RunResult* r : runs) {
      sum += double(r->profit);
      row.best_profit = std::max(row.best_profit, r->profit);
    }
    row.mean_profit = sum / double(runs.size());
    if (auto it = reference.find(name); it != reference.end()) {
      row.reference = it->second;
      if (it->second > 0.0) row.ratio = row.mean_profit / it->second;
    } else {
      report.warnings.push_back("no reference value for " + name + "; ratio omitted");
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string AggregateReport::csv() const {
  std::ostringstream out;
  out << "instance,runs,mean_profit,best_profit,reference,ratio\n";
  for (const AggregateRow& r : rows) {
    out << r.instance << ',' << r.runs << ',' << fmt(r.mean_profit) << ','
        << r.best_profit << ',' << (r.reference ? fmt(*r.reference) : "") << ','
        << (r.ratio ? fmt(*r.ratio) : "") << '\n';
  }
  return out.str();
}

Route greedy_tour(const Instance& inst) {
  const std::size_t n = inst.num_cities();
  std::vector<std::uint8_t> visited(n, 0);
  visited[inst.start()] = 1;
  visited[inst.end()] = 1;
  Route r;
  r.cities.push_back(inst.start());
  for (std::size_t step = 2; step < n; ++step) {
    const CityId here = r.cities.back();
    CityId next = inst.end();
    for (CityId c = 0; c < n; ++c) {
      if (visited[c]) continue;
      if (next == inst.end() || inst.dist(here, c) < inst.dist(here, next)) next = c;
    }
    visited[next] = 1;
    r.cities.push_back(next);
  }
  r.cities.push_back(inst.end());
  return r;
}

double greedy_tour_time(const Instance& inst) {
  PackingPlan all(inst.num_items());
  for (const Item& item : inst.items()) all.pick(item);
  return travel_time(inst, greedy_tour(inst), all);
}

std::string export_plot_data(const Instance& inst, const Solution& sol) {
  const Evaluation ev = evaluate(inst, sol.route, sol.plan, /*strict=*/true);
  std::ostringstream out;
  out << "kind,index,from,to,x1,y1,x2,y2,weight\n";
  auto point = [&](CityId c) {
    const Point& p = inst.coords()[c];
    return fmt(p.x) + "," + fmt(p.y);
  };
  const CityId first = sol.route.cities.front();
  const CityId last = sol.route.cities.back();
  out << "start,0," << first + 1 << ',' << first + 1 << ',' << point(first) << ','
      << point(first) << ",0\n";
  for (std::size_t p = 1; p < ev.legs.size(); ++p) {
    const Leg& from = ev.legs[p - 1];
    const Leg& to = ev.legs[p];
    out << "segment," << p << ',' << from.city + 1 << ',' << to.city + 1 << ','
        << point(from.city) << ',' << point(to.city) << ',' << from.departing_weight
        << '\n';
  }
  out << "end,0," << last + 1 << ',' << last + 1 << ',' << point(last) << ','
      << point(last) << ',' << ev.final_weight << '\n';
  return out.str();
}

}  // namespace thop

#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>

#include "aoi/errors.hpp"
#include "aoi/phy.hpp"
#include "aoi/queueing.hpp"
#include "aoi/sim.hpp"
#include "aoi/version.hpp"

namespace aoi::cli {

const char* to_string(SolverChoice s) noexcept {
  switch (s) {
    case SolverChoice::Exact: return "exact";
    case SolverChoice::CCP: return "ccp";
    case SolverChoice::Both: return "both";
  }
  return "?";
}

const char* axis_name(SweepAxis a) noexcept {
  switch (a) {
    case SweepAxis::None: return "none";
    case SweepAxis::PacketLen: return "packet_len_bits";
    case SweepAxis::LambdaMax: return "lambda_max";
    case SweepAxis::NDevices: return "n_devices";
  }
  return "?";
}

const char* axis_column(SweepAxis a) noexcept {
  switch (a) {
    case SweepAxis::PacketLen: return "L";
    case SweepAxis::LambdaMax: return "lambda_max";
    case SweepAxis::NDevices: return "N";
    case SweepAxis::None: break;
  }
  return "L";
}

SweepAxis parse_axis(const std::string& name) {
  for (SweepAxis a : {SweepAxis::None, SweepAxis::PacketLen, SweepAxis::LambdaMax, SweepAxis::NDevices}) {
    if (name == axis_name(a)) return a;
  }
  throw ConfigError("unknown sweep axis '" + name + "'");
}

SolverChoice parse_solver(const std::string& name) {
  for (SolverChoice s : {SolverChoice::Exact, SolverChoice::CCP, SolverChoice::Both}) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("unknown solver '" + name + "'");
}

std::vector<Combo> all_combos() {
  std::vector<Combo> out;
  for (bool bench : {false, true}) {
    for (Protocol pr : kAllProtocols) {
      for (Policy po : kAllPolicies) out.push_back({pr, po, bench});
    }
  }
  return out;
}

SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value) {
  SystemConfig cfg = base;
  switch (axis) {
    case SweepAxis::None: break;
    case SweepAxis::PacketLen: cfg.packet_len_bits = value; break;
    case SweepAxis::LambdaMax: cfg.lambda_max = value; break;
    case SweepAxis::NDevices: {
      const double n = std::round(value);
      if (n != value || n < 1) throw ConfigError("n_devices sweep values must be positive integers");
      cfg = with_devices(base, static_cast<int>(n));
      break;
    }
  }
  return validate_config(cfg);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ResultRow base_row(const SystemConfig& cfg, const Combo& combo, opt::Method method) {
  ResultRow row;
  row.protocol = combo.protocol;
  row.policy = combo.policy;
  row.benchmark = combo.benchmark;
  row.solver = method;
  row.packet_len_bits = cfg.packet_len_bits;
  row.lambda_max = cfg.lambda_max;
  row.n_devices = cfg.n_devices;
  row.config_hash = config_hash(cfg);
  row.x = {kNaN, kNaN, kNaN, kNaN};
  row.peak_aoi_s = row.per_packet_aoi_s = row.avg_power_w = kNaN;
  return row;
}

ResultRow report_row(const opt::ProblemSpec& p, const Combo& combo, const opt::SolveReport& r) {
  ResultRow row = base_row(p.cfg, combo, r.method);
  row.iterations = r.iterations;
  row.wallclock_ms = r.wallclock_ms;
  row.feasible = r.feasible;
  if (!r.feasible) {
    row.status = r.diagnostic.empty() ? "infeasible" : r.diagnostic;
    return row;
  }
  row.x = r.x_rounded;
  const auto aoi = queueing::protocol_peak_aoi(p.protocol, p.policy, row.x);
  row.peak_aoi_s = aoi.total_peak_aoi_s;
  row.per_packet_aoi_s = aoi.per_packet_aoi_s;
  const double level = p.tx(row.x.tau_b_s).level_w;
  row.avg_power_w = phy::avg_power_consumption(p.policy, row.x, p.cfg, phy::window_power(p.protocol, p.cfg, level),
                                               combo.benchmark);
  row.status = r.monotonicity_violations > 0 ? "ok; objective increased along iterates" : "ok";
  return row;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

unsigned worker_count(unsigned requested, std::size_t tasks) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, tasks)));
}

template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  const unsigned n = worker_count(threads, count);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<ResultRow> solve_instance(const SystemConfig& cfg, const Combo& combo, SolverChoice solver,
                                      const SolverOptions& options) {
  const bool want_exact = solver != SolverChoice::CCP;
  const bool want_ccp = solver != SolverChoice::Exact;
  std::vector<ResultRow> rows;
  auto infeasible = [&](opt::Method m, const std::string& why) {
    ResultRow row = base_row(cfg, combo, m);
    row.status = why;
    rows.push_back(row);
  };

  opt::ProblemSpec p;
  try {
    p = opt::build_problem(combo.protocol, combo.policy, cfg, opt::weakest_device(cfg));
  } catch (const InfeasibleError& e) {
    if (want_exact) infeasible(opt::Method::Exact, e.what());
    if (want_ccp) infeasible(opt::Method::CCP, e.what());
    return rows;
  }

  std::optional<opt::SolveReport> exact;
  if (want_exact) {
    exact = opt::exact_linear_search(p, options.grid_k);
    rows.push_back(report_row(p, combo, *exact));
  }
  if (want_ccp) {
    try {
      const DecisionVector x0 = opt::find_feasible_point(p);
      const opt::SolveReport ccp = opt::ccp_solve(p, x0, options.ccp_k, options.ccp_eps);
      ResultRow row = report_row(p, combo, ccp);
      if (exact && exact->feasible && ccp.feasible) {
        const double gap = ccp.objective_rounded_s / exact->objective_rounded_s - 1.0;
        if (gap > 0.02) {
          char buf[96];
          std::snprintf(buf, sizeof buf, "ok; ccp objective %.2f%% above exact (local basin)", 100.0 * gap);
          row.status = buf;
        }
      }
      rows.push_back(row);
    } catch (const InfeasibleError& e) {
      infeasible(opt::Method::CCP, e.what());
    }
  }
  return rows;
}

std::vector<ResultRow> run_sweep(const ExperimentPlan& plan) {
  std::vector<double> values = plan.sweep_values;
  if (plan.sweep_axis == SweepAxis::None) values = {0.0};
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<SystemConfig> configs;
  for (double v : values) configs.push_back(apply_axis(plan.base, plan.sweep_axis, v));

  struct Task {
    std::size_t combo;
    std::size_t value;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < plan.combos.size(); ++c) {
    for (std::size_t v = 0; v < values.size(); ++v) tasks.push_back({c, v});
  }
  std::vector<std::vector<ResultRow>> results(tasks.size());
  parallel_for(tasks.size(), plan.threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    results[i] = solve_instance(configs[t.value], plan.combos[t.combo], plan.solver, plan.options);
  });

  // tasks are generated combo-major with ascending value order
  std::vector<std::size_t> order(values.size());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<ResultRow> rows;
  for (std::size_t c = 0; c < plan.combos.size(); ++c) {
    for (std::size_t v : order) {
      for (const ResultRow& r : results[c * values.size() + v]) rows.push_back(r);
    }
  }
  return rows;
}

void write_csv_header(std::ostream& out) {
  out << "protocol,policy,solver,L,lambda_max,N,lambda_opt,tau_b_opt,tau_s_opt_or_M,phi_r_opt,peak_aoi_s,"
         "per_packet_aoi_s,avg_power_w,iterations,wallclock_ms,benchmark,status,config_hash\n";
}

void write_csv_row(std::ostream& out, const ResultRow& r) {
  out << to_string(r.protocol) << ',' << to_string(r.policy) << ',' << opt::to_string(r.solver) << ','
      << format_number(r.packet_len_bits) << ',' << format_number(r.lambda_max) << ',' << r.n_devices << ','
      << format_number(r.x.lambda_rate) << ',' << format_number(r.x.tau_b_s) << ','
      << format_number(r.x.policy_param) << ',' << format_number(r.x.phi_r_w) << ','
      << format_number(r.peak_aoi_s) << ',' << format_number(r.per_packet_aoi_s) << ','
      << format_number(r.avg_power_w) << ',' << r.iterations << ',' << format_number(r.wallclock_ms) << ','
      << (r.benchmark ? 1 : 0) << ',' << csv_quote(r.status) << ',' << r.config_hash << '\n';
}

void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv_header(out);
  for (const ResultRow& r : rows) write_csv_row(out, r);
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

void write_manifest(const std::filesystem::path& path, const SystemConfig& cfg, const std::string& command,
                    const std::vector<std::uint64_t>& seeds, const std::string& extra_json) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "{\n  \"tool\": \"aoi\",\n  \"version\": \"" << kVersion << "\",\n  \"revision\": \"" << kRevision
      << "\",\n  \"command\": \"" << json_escape(command) << "\",\n  \"config_hash\": \"" << config_hash(cfg)
      << "\",\n  \"config\": " << config_to_json(cfg, 2) << ",\n  \"assumed_defaults\": [";
  const auto& assumed = assumed_default_fields();
  for (std::size_t i = 0; i < assumed.size(); ++i) out << (i ? ", " : "") << '"' << assumed[i] << '"';
  out << "],\n  \"notes\": [\n"
         "    \"lambda_max and lambda_min are in packets per second; a kbps label for the rate sweep would be "
         "inconsistent with the 15 packets/s default and is not used\",\n"
         "    \"fields listed in assumed_defaults are modelling assumptions; absolute AoI and power levels depend "
         "on them\"\n  ],\n  \"seeds\": [";
  for (std::size_t i = 0; i < seeds.size(); ++i) out << (i ? ", " : "") << seeds[i];
  out << "],\n  \"run\": " << extra_json << "\n}\n";
}

std::vector<ValidationPoint> default_validation_grid(Policy policy) {
  std::vector<ValidationPoint> grid;
  if (policy == Policy::MV) {
    const std::pair<double, double> loads[] = {{0.2, 1.0}, {0.5, 1.0}, {1.4, 0.5}};
    for (const auto& [lambda, tau_b] : loads) {
      for (double tau_s : {0.0, 0.4, 1.0, 2.0}) grid.push_back({Policy::MV, lambda, tau_b, tau_s, 1});
    }
  } else {
    for (double lambda : {0.3, 0.5, 0.7}) {
      for (int m : {1, 3, 5}) grid.push_back({Policy::ST, lambda, 1.0, 0.0, m});
    }
  }
  return grid;
}

std::vector<ValidationRow> run_validation(const std::vector<ValidationPoint>& points, std::int64_t departures,
                                          std::uint64_t seed, double tolerance, unsigned threads) {
  for (const ValidationPoint& pt : points) queueing::require_stable(pt.lambda_rate, pt.tau_b_s);
  std::vector<std::vector<ValidationRow>> per_point(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const ValidationPoint& pt = points[i];
    sim::SimSpec spec;
    spec.params = {pt.lambda_rate, pt.tau_b_s, pt.tau_s_s, pt.threshold};
    spec.policy = pt.policy;
    spec.target_departures = departures;
    spec.seed = seed;
    const sim::QueueStats s = sim::simulate(spec);
    const auto aoi = pt.policy == Policy::MV ? queueing::peak_aoi_mv(spec.params) : queueing::peak_aoi_st(spec.params);
    const double queue = pt.policy == Policy::MV ? queueing::mv_mean_queue(spec.params)
                                                 : queueing::st_mean_queue(spec.params);
    auto add = [&](const char* metric, double closed, const Estimate& des) {
      ValidationRow row;
      row.point = pt;
      row.metric = metric;
      row.closed_form = closed;
      row.des = des;
      row.rel_err = std::abs(des.mean - closed) / closed;
      row.pass = row.rel_err <= tolerance;
      per_point[i].push_back(row);
    };
    add("mean_delay_s", aoi.mean_delay_s, s.mean_delay_s);
    add("mean_queue_len", queue, s.mean_queue_len);
    add("peak_aoi_s", aoi.total_peak_aoi_s, s.mean_peak_aoi_s);
    add("per_packet_aoi_s", aoi.per_packet_aoi_s, s.mean_per_packet_aoi_s);
  });
  std::vector<ValidationRow> rows;
  for (auto& v : per_point) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

void write_validation_csv(std::ostream& out, const std::vector<ValidationRow>& rows) {
  out << "policy,lambda,tau_b,tau_s,M,metric,closed_form,des_mean,des_half_width,rel_err,pass\n";
  for (const ValidationRow& r : rows) {
    out << to_string(r.point.policy) << ',' << format_number(r.point.lambda_rate) << ','
        << format_number(r.point.tau_b_s) << ',' << format_number(r.point.tau_s_s) << ',' << r.point.threshold << ','
        << r.metric << ',' << format_number(r.closed_form) << ',' << format_number(r.des.mean) << ','
        << format_number(r.des.half_width) << ',' << format_number(r.rel_err) << ',' << (r.pass ? "pass" : "fail")
        << '\n';
  }
}

}  // namespace aoi::cli

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "aoi/errors.hpp"
#include "aoi/sim.hpp"
#include "aoi/version.hpp"
#include "harness.hpp"

namespace aoi::cli {

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::string solver = "exact";
  std::string protocol = "all";
  std::string policy = "all";
  bool benchmark = false;
  int grid_k = 1000;
  int ccp_k = 50;
  double ccp_eps = 1e-6;
  unsigned threads = 0;
};

void add_solver_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON config (defaults used when omitted)");
  cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--solver", o.solver, "exact | ccp | both")->capture_default_str();
  cmd->add_option("--protocol", o.protocol, "tdma | fdma | noma | all")->capture_default_str();
  cmd->add_option("--policy", o.policy, "mv | st | all")->capture_default_str();
  cmd->add_flag("--benchmark", o.benchmark, "also report rows with idle power replaced by active power");
  cmd->add_option("--grid-k", o.grid_k, "rate grid intervals of the exact search")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--ccp-k", o.ccp_k, "CCP iteration cap")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--ccp-eps", o.ccp_eps, "CCP stopping tolerance (unit-scaled coordinates)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)")->capture_default_str();
}

Protocol require_protocol(const std::string& name) {
  if (auto p = parse_protocol(name)) return *p;
  throw ConfigError("unknown protocol '" + name + "'");
}

Policy require_policy(const std::string& name) {
  if (auto p = parse_policy(name)) return *p;
  throw ConfigError("unknown policy '" + name + "'");
}

SystemConfig load_or_default(const std::string& path) {
  return path.empty() ? validate_config(default_config()) : load_config(path);
}

std::vector<Combo> select_combos(const CommonOptions& o) {
  std::vector<Protocol> protocols;
  std::vector<Policy> policies;
  if (o.protocol == "all") {
    protocols.assign(kAllProtocols.begin(), kAllProtocols.end());
  } else {
    protocols.push_back(require_protocol(o.protocol));
  }
  if (o.policy == "all") {
    policies.assign(kAllPolicies.begin(), kAllPolicies.end());
  } else {
    policies.push_back(require_policy(o.policy));
  }
  std::vector<Combo> combos;
  for (bool bench : {false, true}) {
    if (bench && !o.benchmark) continue;
    for (Protocol pr : protocols) {
      for (Policy po : policies) combos.push_back({pr, po, bench});
    }
  }
  return combos;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const auto second = text.find(':', colon + 1);
    if (second == std::string::npos) throw ConfigError("range must be start:stop:step");
    const double start = std::stod(text.substr(0, colon));
    const double stop = std::stod(text.substr(colon + 1, second - colon - 1));
    const double step = std::stod(text.substr(second + 1));
    if (!(step > 0.0) || stop < start) throw ConfigError("range needs step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) values.push_back(start + static_cast<double>(i) * step);
    return values;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw ConfigError("bad sweep value '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError("no sweep values given");
  return values;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
  return s;
}

nlohmann::json solver_json(const CommonOptions& o) {
  return {{"solver", o.solver},     {"grid_k", o.grid_k},       {"ccp_k", o.ccp_k},
          {"ccp_eps", o.ccp_eps},   {"protocol", o.protocol},   {"policy", o.policy},
          {"benchmark", o.benchmark}};
}

bool any_infeasible(const std::vector<ResultRow>& rows) {
  for (const auto& r : rows) {
    if (!r.feasible) return true;
  }
  return false;
}

void print_rows(const std::vector<ResultRow>& rows) {
  std::ostringstream csv;
  write_csv_header(csv);
  for (const auto& r : rows) write_csv_row(csv, r);
  std::cout << csv.str();
}

int cmd_solve(const CommonOptions& o, const std::string& command) {
  const SystemConfig cfg = load_or_default(o.config_path);
  ExperimentPlan plan;
  plan.base = cfg;
  plan.combos = select_combos(o);
  plan.solver = parse_solver(o.solver);
  plan.options = {o.grid_k, o.ccp_k, o.ccp_eps};
  plan.threads = o.threads;
  const auto rows = run_sweep(plan);
  const std::filesystem::path out = o.out_dir;
  write_csv(out / "solve.csv", rows);
  write_manifest(out / "solve_manifest.json", cfg, command, {}, solver_json(o).dump());
  print_rows(rows);
  return any_infeasible(rows) ? kExitInfeasible : kExitOk;
}

int cmd_sweep(const CommonOptions& o, const std::string& axis_text, const std::string& values_text,
              const std::string& command) {
  const SystemConfig cfg = load_or_default(o.config_path);
  ExperimentPlan plan;
  plan.base = cfg;
  plan.sweep_axis = parse_axis(axis_text);
  if (plan.sweep_axis == SweepAxis::None) throw ConfigError("sweep needs an axis");
  plan.sweep_values = parse_values(values_text);
  plan.combos = select_combos(o);
  plan.solver = parse_solver(o.solver);
  plan.options = {o.grid_k, o.ccp_k, o.ccp_eps};
  plan.threads = o.threads;
  const auto rows = run_sweep(plan);
  const std::filesystem::path out = o.out_dir;
  const auto csv = out / ("sweep_" + axis_text + ".csv");
  write_csv(csv, rows);
  const auto plots = render_plots(csv, out, axis_column(plan.sweep_axis));
  nlohmann::json run = solver_json(o);
  run["axis"] = axis_text;
  run["values"] = plan.sweep_values;
  run["csv"] = csv.filename().string();
  for (const auto& p : plots) run["plots"].push_back(p.filename().string());
  write_manifest(out / ("sweep_" + axis_text + "_manifest.json"), cfg, command, {}, run.dump());
  std::size_t bad = 0;
  for (const auto& r : rows) bad += r.feasible ? 0 : 1;
  std::cout << "wrote " << rows.size() << " rows to " << csv.string() << " (" << bad << " infeasible)\n";
  for (const auto& p : plots) std::cout << "wrote " << p.string() << '\n';
  return bad > 0 ? kExitInfeasible : kExitOk;
}

int cmd_plot(const std::string& csv, const std::string& out_dir, const std::string& x_column) {
  for (const auto& p : render_plots(csv, out_dir, x_column)) std::cout << "wrote " << p.string() << '\n';
  return kExitOk;
}

struct ValidateOptions {
  std::string policy = "all";
  std::int64_t departures = 1'000'000;
  std::uint64_t seed = 1;
  double tolerance = 0.01;
  std::string out_dir = "out";
  unsigned threads = 0;
};

int cmd_validate(const ValidateOptions& v, const std::string& command) {
  std::vector<ValidationPoint> points;
  for (Policy po : kAllPolicies) {
    if (v.policy != "all" && require_policy(v.policy) != po) continue;
    const auto grid = default_validation_grid(po);
    points.insert(points.end(), grid.begin(), grid.end());
  }
  const auto rows = run_validation(points, v.departures, v.seed, v.tolerance, v.threads);
  const std::filesystem::path out = v.out_dir;
  std::filesystem::create_directories(out);
  {
    std::ofstream file(out / "validation.csv");
    write_validation_csv(file, rows);
  }
  nlohmann::json run{{"departures", v.departures}, {"tolerance", v.tolerance}, {"policy", v.policy}};
  write_manifest(out / "validation_manifest.json", validate_config(default_config()), command, {v.seed}, run.dump());

  std::size_t failures = 0;
  std::cout << std::left << std::setw(7) << "policy" << std::setw(8) << "lambda" << std::setw(7) << "tau_b"
            << std::setw(7) << "tau_s" << std::setw(4) << "M" << std::setw(18) << "metric" << std::setw(14)
            << "closed_form" << std::setw(14) << "des" << std::setw(11) << "rel_err"
            << "result\n";
  for (const auto& r : rows) {
    failures += r.pass ? 0 : 1;
    std::cout << std::left << std::setw(7) << to_string(r.point.policy) << std::setw(8) << r.point.lambda_rate
              << std::setw(7) << r.point.tau_b_s << std::setw(7) << r.point.tau_s_s << std::setw(4)
              << r.point.threshold << std::setw(18) << r.metric << std::setw(14) << std::setprecision(8)
              << r.closed_form << std::setw(14) << r.des.mean << std::setw(11) << std::setprecision(3) << r.rel_err
              << (r.pass ? "pass" : "FAIL") << std::setprecision(6) << '\n';
  }
  std::cout << rows.size() - failures << "/" << rows.size() << " comparisons within " << v.tolerance * 100
            << "% relative error\n";
  return failures > 0 ? kExitValidation : kExitOk;
}

struct SimulateOptions {
  std::string policy = "mv";
  double lambda = 0.5;
  double tau_b = 1.0;
  double tau_s = 0.0;
  int threshold = 1;
  std::int64_t departures = 1'000'000;
  std::uint64_t seed = 1;
  std::string trace_path;
  std::size_t max_events = 10'000;
  std::string config_path;
  double tx_power_w = -1.0;
  bool benchmark = false;
};

void print_estimate(const char* name, const Estimate& e) {
  std::cout << std::left << std::setw(22) << name << std::setprecision(8) << e.mean << "  +/- " << e.half_width
            << '\n';
}

int cmd_simulate(const SimulateOptions& s) {
  sim::SimSpec spec;
  spec.policy = require_policy(s.policy);
  spec.params = {s.lambda, s.tau_b, s.tau_s, s.threshold};
  spec.target_departures = s.departures;
  spec.seed = s.seed;
  if (!s.trace_path.empty()) {
    const auto events = sim::simulate_trace(spec, s.max_events);
    std::ofstream out(s.trace_path);
    if (!out) throw std::runtime_error("cannot write " + s.trace_path);
    sim::write_trace_csv(out, events);
    std::cout << "wrote " << events.size() << " events to " << s.trace_path << '\n';
    return kExitOk;
  }
  const sim::QueueStats st = sim::simulate(spec);
  const auto closed = spec.policy == Policy::MV ? queueing::peak_aoi_mv(spec.params) : queueing::peak_aoi_st(spec.params);
  std::cout << "departures            " << st.departures << '\n';
  print_estimate("mean_delay_s", st.mean_delay_s);
  print_estimate("mean_queue_len", st.mean_queue_len);
  print_estimate("mean_peak_aoi_s", st.mean_peak_aoi_s);
  print_estimate("per_packet_aoi_s", st.mean_per_packet_aoi_s);
  print_estimate("time_average_aoi_s", st.time_average_aoi_s);
  print_estimate("utilisation", st.rho_observed);
  std::cout << "closed_form_delay_s   " << closed.mean_delay_s << '\n'
            << "closed_form_peak_s    " << closed.total_peak_aoi_s << '\n';
  if (s.tx_power_w >= 0.0) {
    const SystemConfig cfg = load_or_default(s.config_path);
    const sim::EnergyStats e = sim::energy_trace(spec, cfg, s.tx_power_w, s.benchmark);
    print_estimate("avg_power_w", e.avg_power_w);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Age of information optimisation for wireless powered IoT devices"};
  app.set_version_flag("--version", std::string(kVersion) + " (" + kRevision + ")");
  app.require_subcommand(1);

  CommonOptions solve_opts;
  auto* solve = app.add_subcommand("solve", "solve the optimisation problems for one config");
  add_solver_options(solve, solve_opts);

  CommonOptions sweep_opts;
  std::string axis;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "solve over a range of one config field");
  add_solver_options(sweep, sweep_opts);
  sweep->add_option("--axis", axis, "packet_len_bits | lambda_max | n_devices")->required();
  sweep->add_option("--values", values, "comma list or start:stop:step")->required();

  std::string plot_csv;
  std::string plot_out = "out";
  std::string plot_x = "L";
  auto* plot = app.add_subcommand("plot", "render SVG plots from a results CSV");
  plot->add_option("--csv", plot_csv, "results CSV")->required();
  plot->add_option("--out", plot_out, "output directory")->capture_default_str();
  plot->add_option("--x", plot_x, "CSV column for the horizontal axis")->capture_default_str();

  ValidateOptions val;
  auto* validate = app.add_subcommand("validate", "compare simulation with the closed forms");
  validate->add_option("--policy", val.policy, "mv | st | all")->capture_default_str();
  validate->add_option("--departures", val.departures, "departures per point, including warmup")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  validate->add_option("--seed", val.seed)->capture_default_str();
  validate->add_option("--tolerance", val.tolerance, "relative error tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  validate->add_option("--out", val.out_dir)->capture_default_str();
  validate->add_option("--threads", val.threads)->capture_default_str();

  SimulateOptions simo;
  auto* simulate = app.add_subcommand("simulate", "run the discrete-event simulator once");
  simulate->add_option("--policy", simo.policy, "mv | st")->capture_default_str();
  simulate->add_option("--lambda", simo.lambda, "arrival rate (packets/s)")->capture_default_str();
  simulate->add_option("--tau-b", simo.tau_b, "service slot (s)")->capture_default_str();
  simulate->add_option("--tau-s", simo.tau_s, "vacation length (s)")->capture_default_str();
  simulate->add_option("--threshold", simo.threshold, "wake threshold M")->capture_default_str();
  simulate->add_option("--departures", simo.departures)->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", simo.seed)->capture_default_str();
  simulate->add_option("--trace", simo.trace_path, "write the event log to this CSV instead of statistics");
  simulate->add_option("--max-events", simo.max_events)->capture_default_str();
  simulate->add_option("--config", simo.config_path, "config for the power estimate");
  simulate->add_option("--tx-power", simo.tx_power_w, "transmit power (W); enables the power estimate");
  simulate->add_flag("--benchmark", simo.benchmark, "idle power replaced by active power");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = join_args(argc, argv);
  try {
    if (*solve) return cmd_solve(solve_opts, command);
    if (*sweep) return cmd_sweep(sweep_opts, axis, values, command);
    if (*plot) return cmd_plot(plot_csv, plot_out, plot_x);
    if (*validate) return cmd_validate(val, command);
    if (*simulate) return cmd_simulate(simo);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnstableError& e) {
    std::cerr << "unstable parameters: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible (" << e.constraint() << "): " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace aoi::cli

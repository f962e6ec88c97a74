// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "aoi/config.hpp"
#include "aoi/errors.hpp"
#include "aoi/opt.hpp"
#include "aoi/phy.hpp"
#include "aoi/queueing.hpp"
#include "aoi/sim.hpp"
#include "harness.hpp"

namespace q = aoi::queueing;
namespace opt = aoi::opt;
namespace phy = aoi::phy;
namespace sim = aoi::sim;
namespace cli = aoi::cli;
using aoi::DecisionVector;
using aoi::Policy;
using aoi::Protocol;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 5) failures.push_back(what);
    }
  }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

aoi::SystemConfig defaults() { return aoi::validate_config(aoi::default_config()); }

sim::SimSpec spec(Policy policy, double lambda, double tau_b, double tau_s, int m, std::uint64_t seed = 1) {
  sim::SimSpec s;
  s.params = {lambda, tau_b, tau_s, m};
  s.policy = policy;
  s.target_departures = 1'000'000;
  s.seed = seed;
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Richardson-extrapolated central difference.
double derivative(const std::function<double(double)>& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2 * h);
  const double d2 = (f(x + 2 * h) - f(x - 2 * h)) / (4 * h);
  return (4 * d1 - d2) / 3;
}

struct MvPoint {
  double lambda, tau_b, tau_s;
};

std::vector<MvPoint> mv_grid() {
  std::vector<MvPoint> g;
  for (auto [lambda, tau_b] : {std::pair{0.2, 1.0}, {0.5, 1.0}, {1.4, 0.5}}) {
    for (double tau_s : {0.0, 0.4, 1.0, 2.0}) g.push_back({lambda, tau_b, tau_s});
  }
  return g;
}

struct StPoint {
  double lambda;
  int m;
};

std::vector<StPoint> st_grid() {
  std::vector<StPoint> g;
  for (double lambda : {0.3, 0.5, 0.7}) {
    for (int m : {1, 3, 5}) g.push_back({lambda, m});
  }
  return g;
}

// M/D/1 mean delay from the DES vs closed form.
void ac1(Outcome& o) {
  double worst = 0.0, slowest = 0.0;
  for (double lambda : {0.3, 0.5, 0.8, 0.9}) {
    const auto t0 = Clock::now();
    const auto st = sim::simulate(spec(Policy::MV, lambda, 1.0, 0.0, 1));
    const double secs = seconds_since(t0);
    const double cf = q::md1_mean_delay({lambda, 1.0, 0.0, 1});
    const double e = rel(st.mean_delay_s.mean, cf);
    worst = std::max(worst, e);
    slowest = std::max(slowest, secs);
    o.check(e <= 0.01, "lambda=" + fmt("%g", lambda) + " rel err " + fmt("%.3g", e));
    o.check(secs < 10.0, "lambda=" + fmt("%g", lambda) + " took " + fmt("%.2f s", secs));
  }
  o.check(std::abs(q::md1_mean_delay({0.5, 1.0, 0.0, 1}) - 1.5) < 1e-12, "closed form at 0.5 is not 1.5");
  o.check(std::abs(q::md1_mean_delay({0.9, 1.0, 0.0, 1}) - 5.5) < 1e-12, "closed form at 0.9 is not 5.5");
  o.detail << "max rel err " << fmt("%.2e", worst) << ", slowest point " << fmt("%.2f s", slowest);
}

// Multiple-vacation peak age on a 12-point grid, plus the vacation term.
void ac2(Outcome& o) {
  double worst = 0.0, worst_z = 0.0;
  std::map<std::pair<double, double>, sim::QueueStats> base;
  for (const auto& pt : mv_grid()) {
    const auto st = sim::simulate(spec(Policy::MV, pt.lambda, pt.tau_b, pt.tau_s, 1));
    const double cf = q::peak_aoi_mv({pt.lambda, pt.tau_b, pt.tau_s, 1}).total_peak_aoi_s;
    const double e = rel(st.mean_peak_aoi_s.mean, cf);
    worst = std::max(worst, e);
    o.check(e <= 0.01, "peak at (" + fmt("%g", pt.lambda) + "," + fmt("%g", pt.tau_s) + ") rel err " + fmt("%.3g", e));
    const auto key = std::pair{pt.lambda, pt.tau_b};
    if (pt.tau_s == 0.0) {
      base[key] = st;
      continue;
    }
    const auto& b = base.at(key);
    const double diff = st.mean_peak_aoi_s.mean - b.mean_peak_aoi_s.mean;
    const double h = std::hypot(st.mean_peak_aoi_s.half_width, b.mean_peak_aoi_s.half_width);
    const double gap = std::abs(diff - pt.tau_s / 2);
    worst_z = std::max(worst_z, gap / h);
    o.check(gap <= h, "additional age at tau_s=" + fmt("%g", pt.tau_s) + " off by " + fmt("%.3g", gap) +
                          " > " + fmt("%.3g", h));
  }
  o.detail << "12 points, max rel err " << fmt("%.2e", worst) << ", max |diff - tau_s/2| / CI "
           << fmt("%.2f", worst_z);
}

// Start-up threshold queue length and peak age.
void ac3(Outcome& o) {
  double worst = 0.0;
  for (const auto& pt : st_grid()) {
    const auto st = sim::simulate(spec(Policy::ST, pt.lambda, 1.0, 0.0, pt.m));
    const double rho = pt.lambda;
    const double queue_cf = rho + rho * rho / (2 * (1 - rho)) + (pt.m - 1) / 2.0;
    const double peak_cf = q::peak_aoi_st({pt.lambda, 1.0, 0.0, pt.m}).total_peak_aoi_s;
    const double eq = rel(st.mean_queue_len.mean, queue_cf);
    const double ep = rel(st.mean_peak_aoi_s.mean, peak_cf);
    worst = std::max({worst, eq, ep});
    const std::string at = "(" + fmt("%g", pt.lambda) + ",M=" + fmt("%g", pt.m) + ")";
    o.check(std::abs(q::st_mean_queue({pt.lambda, 1.0, 0.0, pt.m}) - queue_cf) < 1e-12, "library queue " + at);
    o.check(eq <= 0.01, "queue " + at + " rel err " + fmt("%.3g", eq));
    o.check(ep <= 0.01, "peak " + at + " rel err " + fmt("%.3g", ep));
  }
  o.check(std::abs(q::st_mean_queue({0.5, 1.0, 0.0, 3}) - 1.75) < 1e-12, "queue at (0.5,3) is not 1.75");
  o.check(std::abs(q::peak_aoi_st({0.5, 1.0, 0.0, 3}).total_peak_aoi_s - 5.5) < 1e-12, "peak at (0.5,3) is not 5.5");
  o.detail << "9 points, max rel err " << fmt("%.2e", worst);
}

// Per-packet age equals (delay + peak)/2 on the full validation grid.
void ac4(Outcome& o) {
  std::vector<sim::SimSpec> specs;
  for (const auto& pt : mv_grid()) specs.push_back(spec(Policy::MV, pt.lambda, pt.tau_b, pt.tau_s, 1));
  for (const auto& pt : st_grid()) specs.push_back(spec(Policy::ST, pt.lambda, 1.0, 0.0, pt.m));
  double worst = 0.0;
  for (const auto& s : specs) {
    const auto st = sim::simulate(s);
    const double identity = 0.5 * (st.mean_delay_s.mean + st.mean_peak_aoi_s.mean);
    const double h = std::sqrt(std::pow(st.mean_per_packet_aoi_s.half_width, 2) +
                               std::pow(0.5 * st.mean_delay_s.half_width, 2) +
                               std::pow(0.5 * st.mean_peak_aoi_s.half_width, 2));
    const double gap = std::abs(st.mean_per_packet_aoi_s.mean - identity);
    worst = std::max(worst, gap / h);
    o.check(gap <= h, "lambda=" + fmt("%g", s.params.lambda_rate) + " gap " + fmt("%.3g", gap) + " > " +
                          fmt("%.3g", h));
  }
  o.detail << specs.size() << " points, max gap / combined CI " << fmt("%.3f", worst);
}

// DC split reproduces the peak-age closed forms; gradient of the concave
// part matches finite differences.
void ac5(Outcome& o) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_id = 0.0, worst_grad = 0.0;
  for (Policy po : aoi::kAllPolicies) {
    const auto dc = opt::dc_decompose(po);
    for (int i = 0; i < 1000; ++i) {
      const double tau = 0.005 + 0.5 * u(gen);
      const double lambda = (0.02 + 0.95 * u(gen)) / tau;
      const double param = po == Policy::MV ? 2 * tau * u(gen) : 1 + 9 * u(gen);
      const DecisionVector x{lambda, tau, param, 1.0};
      const double ref = po == Policy::MV ? q::peak_aoi_mv_value(lambda, tau, param)
                                          : q::peak_aoi_st_value(lambda, tau, param);
      const double e = rel(dc.f1(x) + dc.f2(x), ref);
      worst_id = std::max(worst_id, e);
      o.check(e <= 1e-12, "identity rel err " + fmt("%.3g", e));
      const auto g = dc.grad_f2(x);
      for (int k = 0; k < 4; ++k) {
        const double base = k == 0 ? lambda : k == 1 ? tau : k == 2 ? param : x.phi_r_w;
        auto along = [&](double v) {
          DecisionVector y = x;
          double* fields[] = {&y.lambda_rate, &y.tau_b_s, &y.policy_param, &y.phi_r_w};
          *fields[k] = v;
          return dc.f2(y);
        };
        // step shrinks with the distance to saturation so the stencil stays
        // well inside the stable region
        const double h = 1e-3 * (1 - lambda * tau) * std::max(std::abs(base), 1e-3);
        const double fd = derivative(along, base, h);
        const double gk = g[static_cast<std::size_t>(k)];
        if (gk == 0.0 && std::abs(fd) < 1e-9) continue;
        const double e2 = std::abs(gk - fd) / std::max(std::abs(gk), std::abs(fd));
        worst_grad = std::max(worst_grad, e2);
        o.check(e2 <= 1e-6, "gradient component " + std::to_string(k) + " rel err " + fmt("%.3g", e2));
      }
    }
  }
  o.detail << "2x1000 points, identity max rel err " << fmt("%.2e", worst_id) << ", gradient max rel err "
           << fmt("%.2e", worst_grad);
}

// CCP vs exact linear search on the six default instances.
void ac6(Outcome& o) {
  const auto cfg = defaults();
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (Protocol pr : aoi::kAllProtocols) {
    for (Policy po : aoi::kAllPolicies) {
      const auto p = opt::build_problem(pr, po, cfg, opt::weakest_device(cfg));
      const auto exact = opt::exact_linear_search(p, 1000);
      const auto ccp = opt::ccp_solve(p, opt::find_feasible_point(p), 50, 1e-6);
      const double e = (ccp.objective_s - exact.objective_s) / exact.objective_s;
      worst = std::max(worst, e);
      const std::string name = std::string(aoi::to_string(pr)) + "-" + std::string(aoi::to_string(po));
      o.check(exact.feasible && ccp.feasible, name + " infeasible");
      o.check(p.feasible(ccp.x_star), name + " ccp point violates constraints");
      o.check(e <= 0.02, name + " ccp " + fmt("%.3g", 100 * e) + "% above exact");
    }
  }
  const double secs = seconds_since(t0);
  o.check(secs < 60.0, "suite took " + fmt("%.1f s", secs));
  o.detail << "max ccp excess " << fmt("%.2e", worst) << " relative, suite " << fmt("%.3f s", secs);
}

// Smallest feasible slot from bisection on the raw constraint slacks, with
// the station charging just enough to cover the transmission.
double oracle_floor(const opt::ProblemSpec& p, double lambda) {
  auto ok = [&](double tau) {
    DecisionVector x{lambda, tau, p.bounds.param_lo, p.tx(tau).energy_j / p.cfg.tau_p_s * (1.0 + 1e-12)};
    return p.feasible(x, 0.0);
  };
  double lo = p.cfg.tau_p_s, hi = p.tau_b_ceiling(lambda);
  if (!ok(hi)) return NAN;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Fixed-rate subproblem vs a dense grid over the feasible slots.
void ac7(Outcome& o) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int done = 0, draws = 0;
  double worst = 0.0;
  while (done < 20 && draws < 1000) {
    ++draws;
    aoi::SystemConfig cfg = defaults();
    cfg.packet_len_bits = 40 + 360 * u(gen);
    cfg = aoi::validate_config(aoi::with_devices(cfg, 1 + static_cast<int>(20 * u(gen))));
    const Protocol pr = aoi::kAllProtocols[static_cast<std::size_t>(3 * u(gen)) % 3];
    const Policy po = aoi::kAllPolicies[static_cast<std::size_t>(2 * u(gen)) % 2];
    opt::ProblemSpec p;
    try {
      p = opt::build_problem(pr, po, cfg, opt::weakest_device(cfg));
    } catch (const aoi::InfeasibleError&) {
      continue;
    }
    const double lambda = cfg.lambda_min + (cfg.lambda_max - cfg.lambda_min) * u(gen);
    const double lo = oracle_floor(p, lambda), hi = p.tau_b_ceiling(lambda);
    if (!(lo < hi)) continue;
    const auto c = opt::solve_subproblem_fixed_lambda(p, lambda);
    double best = INFINITY;
    for (int i = 0; i < 10000; ++i) {
      const double tau = lo + (hi - lo) * i / 9999.0;
      best = std::min(best, p.objective({lambda, tau, p.bounds.param_lo, 0.0}));
    }
    const double gap = std::abs(c.objective - best);
    worst = std::max(worst, gap);
    o.check(gap <= 1e-8, std::string(aoi::to_string(pr)) + "-" + std::string(aoi::to_string(po)) + " lambda=" +
                             fmt("%g", lambda) + " gap " + fmt("%.3g", gap));
    o.check(p.feasible(c.x), "subproblem point violates constraints");
    ++done;
  }
  o.check(done == 20, "only " + std::to_string(done) + " feasible instances drawn");
  o.detail << done << " instances, max objective gap " << fmt("%.2e", worst);
}

// Average device power: worked example, simulator cross-check and
// comparison with the always-awake benchmark.
void ac8(Outcome& o) {
  const auto cfg = defaults();
  const DecisionVector x{25.0, 0.02, 0.01, 0.0};
  const double rho = 0.5;
  const double by_hand =
      rho * (cfg.power_active_w + 0.2 * (0.02 - cfg.tau_p_s) / 0.02) +
      (1 - rho) * (cfg.power_idle_w * cfg.switch_ratio + cfg.power_switch_w) / (cfg.switch_ratio + 1);
  o.check(std::abs(by_hand - 0.1095) < 1e-12, "hand value " + fmt("%.6g", by_hand));
  double lib = 0.0;
  for (Policy po : aoi::kAllPolicies) {
    lib = phy::avg_power_consumption(po, x, cfg, 0.2, false);
    o.check(std::abs(lib - 0.1095) < 1e-12, "library value " + fmt("%.8g", lib));
  }
  double worst_des = 0.0;
  for (auto [po, param] : {std::pair{Policy::MV, 0.01}, {Policy::ST, 3.0}}) {
    sim::SimSpec s = spec(po, 25.0, 0.02, po == Policy::MV ? param : 0.0, po == Policy::ST ? 3 : 1);
    const auto e = sim::energy_trace(s, cfg, 0.2, false);
    const double err = rel(e.avg_power_w.mean, 0.1095);
    worst_des = std::max(worst_des, err);
    o.check(err <= 0.02, std::string(aoi::to_string(po)) + " DES power " + fmt("%.6g", e.avg_power_w.mean));
  }
  int strict = 0;
  aoi::SystemConfig equal = cfg;
  equal.power_idle_w = equal.power_active_w;
  equal.power_switch_w = equal.power_active_w;
  for (int i = 0; i < 50; ++i) {
    const double r = (i + 0.5) / 50.0;
    for (Policy po : aoi::kAllPolicies) {
      const DecisionVector xi{r / 0.02, 0.02, po == Policy::MV ? 0.01 : 3.0, 0.0};
      const double sleep = phy::avg_power_consumption(po, xi, cfg, 0.2, false);
      const double bench = phy::avg_power_consumption(po, xi, cfg, 0.2, true);
      o.check(sleep < bench, "not strictly below benchmark at rho=" + fmt("%g", r));
      strict += sleep < bench;
      const double s2 = phy::avg_power_consumption(po, xi, equal, 0.2, false);
      const double b2 = phy::avg_power_consumption(po, xi, equal, 0.2, true);
      o.check(s2 <= b2 * (1 + 1e-12), "above benchmark with equal idle powers at rho=" + fmt("%g", r));
    }
  }
  o.detail << "library " << fmt("%.6g W", lib) << ", DES max rel err " << fmt("%.2e", worst_des) << ", " << strict
           << "/100 grid points strictly below benchmark";
}

// Successive interference cancellation split.
void ac9(Outcome& o) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(10 * u(gen)) % 10;
    std::vector<double> gains(static_cast<std::size_t>(n));
    for (auto& g : gains) g = std::pow(10.0, -3 + 6 * u(gen));
    std::sort(gains.rbegin(), gains.rend());
    const double target = std::pow(10.0, -2 + 3 * u(gen));
    const auto split = phy::noma_power_split(target, gains);
    for (int k = 0; k < n; ++k) {
      double interference = 1.0;
      for (int j = k + 1; j < n; ++j) interference += split.powers_w[static_cast<std::size_t>(j)] * gains[static_cast<std::size_t>(j)];
      const double sinr = split.powers_w[static_cast<std::size_t>(k)] * gains[static_cast<std::size_t>(k)] / interference;
      const double e = rel(sinr, target);
      worst = std::max(worst, e);
      o.check(e <= 1e-12, "N=" + std::to_string(n) + " user " + std::to_string(k) + " rel err " + fmt("%.3g", e));
    }
  }
  const std::vector<double> equal{1.0, 1.0};
  const auto two = phy::noma_power_split(1.0, equal);
  o.check(two.powers_w.size() == 2 && std::abs(two.powers_w[0] - 2.0) < 1e-12 && std::abs(two.powers_w[1] - 1.0) < 1e-12,
          "equal-gain split is not (2,1)");
  o.check(std::abs(two.total_w - 3.0) < 1e-12, "equal-gain total is not 3");
  o.detail << "1000 random gain vectors, max SINR rel err " << fmt("%.2e", worst) << ", equal-gain split ("
           << two.powers_w[0] << "," << two.powers_w[1] << ") total " << two.total_w;
}

using SeriesKey = std::tuple<Protocol, Policy, bool>;

std::map<SeriesKey, std::vector<cli::ResultRow>> by_series(const std::vector<cli::ResultRow>& rows) {
  std::map<SeriesKey, std::vector<cli::ResultRow>> out;
  for (const auto& r : rows) out[{r.protocol, r.policy, r.benchmark}].push_back(r);
  return out;
}

std::vector<cli::ResultRow> sweep(cli::SweepAxis axis, std::vector<double> values) {
  cli::ExperimentPlan plan;
  plan.base = defaults();
  plan.sweep_axis = axis;
  plan.sweep_values = std::move(values);
  plan.combos = cli::all_combos();
  plan.solver = cli::SolverChoice::Exact;
  return cli::run_sweep(plan);
}

std::string series_name(const SeriesKey& k) {
  return std::string(aoi::to_string(std::get<0>(k))) + "-" + std::string(aoi::to_string(std::get<1>(k))) +
         (std::get<2>(k) ? " benchmark" : "");
}

// Qualitative trends over packet length and device count sweeps.
void ac10(Outcome& o) {
  constexpr double slack = 1e-9;
  std::vector<double> lengths, devices;
  for (int l = 40; l <= 400; l += 40) lengths.push_back(l);
  for (int n = 2; n <= 40; n += 2) devices.push_back(n);
  const auto l_rows = sweep(cli::SweepAxis::PacketLen, lengths);
  const auto n_rows = sweep(cli::SweepAxis::NDevices, devices);
  int checks = 0;
  for (const auto* rows : {&l_rows, &n_rows}) {
    for (const auto& r : *rows) o.check(r.feasible, "infeasible sweep point: " + r.status);
  }

  const auto l_series = by_series(l_rows);
  for (const auto& [key, s] : l_series) {
    for (std::size_t i = 1; i < s.size(); ++i) {
      ++checks;
      o.check(s[i].peak_aoi_s >= s[i - 1].peak_aoi_s * (1 - slack),
              series_name(key) + " peak drops at L=" + fmt("%g", s[i].packet_len_bits));
    }
  }
  for (const auto* rows : {&l_rows, &n_rows}) {
    const auto series = by_series(*rows);
    for (Policy po : aoi::kAllPolicies) {
      for (bool bench : {false, true}) {
        const auto& noma = series.at({Protocol::NOMA, po, bench});
        for (Protocol other : {Protocol::TDMA, Protocol::FDMA}) {
          const auto& s = series.at({other, po, bench});
          for (std::size_t i = 0; i < s.size(); ++i) {
            ++checks;
            o.check(noma[i].peak_aoi_s <= s[i].peak_aoi_s * (1 + slack),
                    "NOMA above " + std::string(aoi::to_string(other)) + " at point " + std::to_string(i));
          }
        }
      }
      for (Protocol pr : aoi::kAllProtocols) {
        const auto& sleep = series.at({pr, po, false});
        const auto& bench = series.at({pr, po, true});
        for (std::size_t i = 0; i < sleep.size(); ++i) {
          ++checks;
          o.check(sleep[i].avg_power_w <= bench[i].avg_power_w * (1 + slack),
                  series_name({pr, po, false}) + " power above benchmark at point " + std::to_string(i));
        }
      }
    }
  }
  const auto n_series = by_series(n_rows);
  for (const auto& [key, s] : n_series) {
    if (std::get<1>(key) != Policy::MV) continue;
    for (std::size_t i = 1; i < s.size(); ++i) {
      ++checks;
      o.check(s[i].peak_aoi_s >= s[i - 1].peak_aoi_s * (1 - slack),
              series_name(key) + " peak drops at N=" + std::to_string(s[i].n_devices));
    }
  }
  o.detail << checks << " trend comparisons over " << l_rows.size() + n_rows.size() << " sweep rows";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"AC1 closed-form delay vs simulation", ac1},
      {"AC2 vacation peak age and additional age", ac2},
      {"AC3 start-up threshold queue and peak age", ac3},
      {"AC4 per-packet age identity", ac4},
      {"AC5 DC decomposition and gradient", ac5},
      {"AC6 CCP vs exact search", ac6},
      {"AC7 fixed-rate subproblem vs dense grid", ac7},
      {"AC8 average power model", ac8},
      {"AC9 NOMA SIC power split", ac9},
      {"AC10 sweep trends", ac10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str(), seconds_since(t0));
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

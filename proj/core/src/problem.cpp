#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aoi/errors.hpp"
#include "aoi/golden_section.hpp"
#include "aoi/opt.hpp"
#include "aoi/phy.hpp"
#include "aoi/queueing.hpp"
#include "opt_detail.hpp"

namespace aoi::opt {

const char* to_string(Method m) noexcept { return m == Method::Exact ? "exact" : "ccp"; }

std::size_t weakest_device(const SystemConfig& cfg) {
  return cfg.distances_m.empty() ? 0 : cfg.distances_m.size() - 1;
}

TxState ProblemSpec::tx(double tau_b_s) const {
  TxState s;
  const double window = tau_b_s - cfg.tau_p_s;
  if (!(window > 0.0)) {
    s.device_power_w = s.level_w = s.energy_j = std::numeric_limits<double>::infinity();
    return s;
  }
  DecisionVector x{0.0, tau_b_s, 0.0, 0.0};
  if (protocol == Protocol::NOMA) {
    const auto split = phy::noma_power_split(phy::noma_sinr_target(tau_b_s, cfg), gains);
    s.device_power_w = *std::max_element(split.powers_w.begin(), split.powers_w.end());
    s.level_w = split.total_w;
    s.energy_j = window * split.total_w;
  } else {
    s.level_w = s.device_power_w = phy::required_tx_power(protocol, x, cfg, gain).power_w;
    const double share = protocol == Protocol::TDMA ? window / cfg.n_devices : window;
    s.energy_j = share * s.level_w;
  }
  s.efficiency = phy::energy_efficiency_at_power(protocol, x, cfg, s.level_w);
  return s;
}

double ProblemSpec::phi_r_cap() const {
  return protocol == Protocol::NOMA ? cfg.n_devices * cfg.phi_r_max_w : cfg.phi_r_max_w;
}

double ProblemSpec::energy_cap() const {
  return protocol == Protocol::NOMA ? cfg.n_devices * cfg.battery_j : cfg.battery_j;
}

double ProblemSpec::min_phi_r(double tau_b_s) const { return tx(tau_b_s).energy_j / cfg.tau_p_s; }

double ProblemSpec::tau_b_ceiling(double lambda) const {
  return std::min(cfg.tau_b_max_s, (1.0 - kStabilityMargin) / lambda);
}

double ProblemSpec::min_slack(const DecisionVector& x) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : constraints) m = std::min(m, c.slack(x));
  return m;
}

std::string ProblemSpec::binding_constraint(const DecisionVector& x) const {
  std::string name;
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : constraints) {
    const double s = c.slack(x);
    if (s < m) {
      m = s;
      name = c.name;
    }
  }
  return name;
}

bool ProblemSpec::feasible(const DecisionVector& x, double tol) const {
  for (const auto& c : constraints) {
    const double s = c.slack(x);
    if (!(s >= -tol)) return false;
  }
  return true;
}

namespace {

double objective_value(Policy policy, const DecisionVector& x) {
  if (!queueing::is_stable(x.lambda_rate, x.tau_b_s)) return std::numeric_limits<double>::infinity();
  return policy == Policy::MV ? queueing::peak_aoi_mv_value(x.lambda_rate, x.tau_b_s, x.policy_param)
                              : queueing::peak_aoi_st_value(x.lambda_rate, x.tau_b_s, x.policy_param);
}

// Slot-only limits: energy, transmit power and efficiency. Returns the name
// of the first violated limit or an empty string.
std::string slot_violation(const ProblemSpec& p, double tau_b) {
  const TxState s = p.tx(tau_b);
  if (!(s.device_power_w <= p.cfg.phi_t_max_w)) return "energy";
  if (!(s.energy_j <= std::min(p.energy_cap(), p.cfg.tau_p_s * p.phi_r_cap()))) return "energy";
  if (!(s.efficiency >= p.cfg.ee_min)) return "ee";
  return {};
}

}  // namespace

ProblemSpec build_problem(Protocol protocol, Policy policy, const SystemConfig& raw, std::size_t device_index) {
  ProblemSpec p;
  p.cfg = validate_config(raw);
  p.protocol = protocol;
  p.policy = policy;
  if (device_index >= p.cfg.distances_m.size()) throw std::invalid_argument("device index out of range");
  p.gains = phy::channel_state(p.cfg, protocol).gains;
  p.device_index = protocol == Protocol::NOMA ? weakest_device(p.cfg) : device_index;
  p.gain = p.gains[p.device_index];

  const SystemConfig& c = p.cfg;
  p.bounds.lambda_lo = c.lambda_min;
  p.bounds.lambda_hi = c.lambda_max;
  p.bounds.tau_b_lo = c.tau_p_s;
  p.bounds.tau_b_hi = c.tau_b_max_s;
  p.bounds.param_lo = policy == Policy::MV ? c.tau_s_min_s : c.m_min;
  p.bounds.param_hi = policy == Policy::MV ? c.tau_s_max_s : c.m_max;
  p.bounds.phi_r_lo = 0.0;
  p.bounds.phi_r_hi = p.phi_r_cap();

  p.objective = [policy](const DecisionVector& x) { return objective_value(policy, x); };

  // The constraint closures copy what they need so a ProblemSpec can be
  // copied freely.
  const ProblemSpec model = p;
  p.constraints.push_back({"energy", [model](const DecisionVector& x) {
                             const TxState s = model.tx(x.tau_b_s);
                             if (!std::isfinite(s.energy_j)) return -1.0;
                             const double ref = model.cfg.tau_p_s * model.phi_r_cap();
                             const double harvested = model.cfg.tau_p_s * x.phi_r_w;
                             return std::min({(harvested - s.energy_j) / ref,
                                              (model.energy_cap() - harvested) / ref,
                                              (model.phi_r_cap() - x.phi_r_w) / model.phi_r_cap(),
                                              (model.cfg.phi_t_max_w - s.device_power_w) / model.cfg.phi_t_max_w});
                           }});
  p.constraints.push_back({"slot_bounds", [model](const DecisionVector& x) {
                             const Bounds& b = model.bounds;
                             const double span = std::max(b.param_hi, 1e-12);
                             return std::min({(x.tau_b_s - b.tau_b_lo) / b.tau_b_hi, (b.tau_b_hi - x.tau_b_s) / b.tau_b_hi,
                                              (x.policy_param - b.param_lo) / span,
                                              (b.param_hi - x.policy_param) / span});
                           }});
  p.constraints.push_back({"rate_bounds", [model](const DecisionVector& x) {
                             const Bounds& b = model.bounds;
                             return std::min((x.lambda_rate - b.lambda_lo) / b.lambda_hi,
                                             (b.lambda_hi - x.lambda_rate) / b.lambda_hi);
                           }});
  p.constraints.push_back({"stability", [](const DecisionVector& x) {
                             return 1.0 - kStabilityMargin - x.lambda_rate * x.tau_b_s;
                           }});
  p.constraints.push_back({"ee", [model](const DecisionVector& x) {
                             if (!(x.tau_b_s > model.cfg.tau_p_s)) return -1.0;
                             return (model.tx(x.tau_b_s).efficiency - model.cfg.ee_min) / model.cfg.ee_min;
                           }});

  // Every slot-only limit is monotone in tau_b, so the feasible slots form
  // [tau_b_floor, tau_b_max].
  if (const std::string v = slot_violation(p, c.tau_b_max_s); !v.empty()) {
    throw InfeasibleError(v, "infeasible: " + v + " constraint cannot be met even at tau_b_max");
  }
  double lo = c.tau_p_s;
  double hi = c.tau_b_max_s;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (slot_violation(p, mid).empty()) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  p.tau_b_floor = hi;
  if (!(c.lambda_min * p.tau_b_floor <= 1.0 - kStabilityMargin)) {
    throw InfeasibleError("stability", "infeasible: stability cannot hold at lambda_min with the shortest feasible slot");
  }
  return p;
}

Candidate solve_subproblem_fixed_lambda(const ProblemSpec& p, double lambda_fixed) {
  const double tol = 1e-12 * std::max(1.0, p.bounds.lambda_hi);
  if (!(lambda_fixed >= p.bounds.lambda_lo - tol && lambda_fixed <= p.bounds.lambda_hi + tol)) {
    throw std::invalid_argument("lambda outside its bounds");
  }
  if (!(lambda_fixed * p.cfg.tau_p_s < 1.0)) throw std::invalid_argument("lambda * tau_p must be below 1");
  const double lo = p.tau_b_floor;
  const double hi = p.tau_b_ceiling(lambda_fixed);
  if (lo > hi) {
    throw InfeasibleError("stability", "infeasible: no slot length satisfies stability at this rate");
  }
  const double param = p.bounds.param_lo;
  const auto best = golden_section_minimize(
      [&](double tau) { return p.objective({lambda_fixed, tau, param, 0.0}); }, lo, hi, 1e-10);
  Candidate out;
  out.x = {lambda_fixed, best.x, param, p.min_phi_r(best.x)};
  out.objective = best.value;
  return out;
}

DcSplit dc_decompose(Policy policy) {
  DcSplit d;
  if (policy == Policy::MV) {
    d.f1 = [](const DecisionVector& x) { return x.policy_param / 2.0 + x.tau_b_s / 2.0 + 1.0 / x.lambda_rate; };
    d.f2 = [](const DecisionVector& x) { return x.tau_b_s / (2.0 * (1.0 - x.lambda_rate * x.tau_b_s)); };
    d.grad_f2 = [](const DecisionVector& x) {
      const double g = 1.0 - x.lambda_rate * x.tau_b_s;
      const double g2 = 2.0 * g * g;
      return std::array<double, 4>{x.tau_b_s * x.tau_b_s / g2, 1.0 / g2, 0.0, 0.0};
    };
  } else {
    d.f1 = [](const DecisionVector& x) { return x.tau_b_s + 1.0 / (2.0 * x.lambda_rate); };
    d.f2 = [](const DecisionVector& x) {
      const double l = x.lambda_rate;
      const double t = x.tau_b_s;
      return l * t * t / (2.0 * (1.0 - l * t)) + x.policy_param / (2.0 * l);
    };
    d.grad_f2 = [](const DecisionVector& x) {
      const double l = x.lambda_rate;
      const double t = x.tau_b_s;
      const double g = 1.0 - l * t;
      const double g2 = 2.0 * g * g;
      return std::array<double, 4>{t * t / g2 - x.policy_param / (2.0 * l * l), l * t * (2.0 - l * t) / g2,
                                   1.0 / (2.0 * l), 0.0};
    };
  }
  return d;
}

DcSplit dc_decompose(const ProblemSpec& p) { return dc_decompose(p.policy); }

DecisionVector find_feasible_point(const ProblemSpec& p) {
  const double lambda = p.bounds.lambda_lo;
  const double lo = p.tau_b_floor;
  const double hi = p.tau_b_ceiling(lambda);
  if (lo > hi) throw InfeasibleError("stability", "infeasible: no slot length satisfies stability at lambda_min");
  DecisionVector x{lambda, 0.5 * (lo + hi), p.bounds.param_lo, 0.0};
  for (int i = 0; i < 64; ++i) {
    x.phi_r_w = p.min_phi_r(x.tau_b_s);
    if (p.feasible(x, 0.0)) return x;
    // larger slots relax energy, power and efficiency limits
    x.tau_b_s = 0.5 * (x.tau_b_s + hi);
  }
  const std::string name = p.binding_constraint(x);
  throw InfeasibleError(name, "infeasible: no feasible starting point (binding: " + name + ")");
}

namespace detail {

void finalize_threshold(const ProblemSpec& p, SolveReport& r) {
  r.x_rounded = r.x_star;
  r.objective_rounded_s = r.objective_s;
  if (p.policy != Policy::ST || !r.feasible) return;
  const double m = r.x_star.policy_param;
  double best = std::numeric_limits<double>::infinity();
  for (double cand : {std::floor(m), std::ceil(m)}) {
    cand = std::clamp(cand, p.bounds.param_lo, p.bounds.param_hi);
    DecisionVector x = r.x_star;
    x.policy_param = cand;
    const double v = p.objective(x);
    if (p.feasible(x) && v < best) {
      best = v;
      r.x_rounded = x;
      r.objective_rounded_s = v;
    }
  }
}

}  // namespace detail

}  // namespace aoi::opt

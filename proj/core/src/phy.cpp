#include "aoi/phy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aoi::phy {

namespace {

double pow2_minus_one(double exponent) { return std::expm1(exponent * std::numbers::ln2); }

void require_window(double tau_b_s, const SystemConfig& cfg) {
  if (!(tau_b_s > cfg.tau_p_s)) throw std::invalid_argument("tau_b must exceed tau_p");
}

}  // namespace

double channel_coefficient(double d_m, const SystemConfig& cfg) {
  if (!(d_m > 0.0)) throw std::invalid_argument("distance must be positive");
  return 1e-3 * cfg.fading_param * std::pow(d_m, -cfg.pathloss_exp);
}

double noise_bandwidth(const SystemConfig& cfg, Protocol protocol) {
  return protocol == Protocol::FDMA ? subchannel_bandwidth(cfg) : cfg.bandwidth_hz;
}

double channel_gain(double d_m, const SystemConfig& cfg, Protocol protocol) {
  const double h = channel_coefficient(d_m, cfg);
  return h * h / (noise_bandwidth(cfg, protocol) * cfg.noise_psd);
}

ChannelState channel_state(const SystemConfig& cfg, Protocol protocol) {
  ChannelState out;
  out.gains.reserve(cfg.distances_m.size());
  out.coeffs.reserve(cfg.distances_m.size());
  for (double d : cfg.distances_m) {
    out.coeffs.push_back(channel_coefficient(d, cfg));
    out.gains.push_back(channel_gain(d, cfg, protocol));
  }
  return out;
}

double eh_power(double phi_wp_w, double h_p, const SystemConfig& cfg) {
  if (phi_wp_w < 0.0 || h_p < 0.0) throw std::invalid_argument("harvesting inputs must be nonnegative");
  return std::min(cfg.eh_efficiency * phi_wp_w * h_p, cfg.eh_clamp_w);
}

double eh_energy(double tau_p_s, double phi_r_w) {
  if (tau_p_s < 0.0 || phi_r_w < 0.0) throw std::invalid_argument("harvesting inputs must be nonnegative");
  return tau_p_s * phi_r_w;
}

double eh_energy(std::span<const PowerSegment> profile) {
  double total = 0.0;
  for (const PowerSegment& s : profile) total += eh_energy(s.duration_s, s.power_w);
  return total;
}

double rate_exponent(Protocol protocol, double tau_b_s, const SystemConfig& cfg) {
  require_window(tau_b_s, cfg);
  const double window = tau_b_s - cfg.tau_p_s;
  const double bits = (cfg.capacity_gap + 1.0) * cfg.packet_len_bits;
  const double n = static_cast<double>(cfg.n_devices);
  switch (protocol) {
    case Protocol::TDMA:
    case Protocol::NOMA:
      return bits * n / (window * cfg.bandwidth_hz);
    case Protocol::FDMA:
      return bits / (window * subchannel_bandwidth(cfg));
  }
  return 0.0;
}

TxPower required_tx_power(Protocol protocol, const DecisionVector& x, const SystemConfig& cfg, double gain) {
  if (!(gain > 0.0)) throw std::invalid_argument("channel gain must be positive");
  TxPower out;
  out.power_w = pow2_minus_one(rate_exponent(protocol, x.tau_b_s, cfg)) / gain;
  out.within_limit = out.power_w <= cfg.phi_t_max_w;
  return out;
}

double noma_sinr_target(double tau_b_s, const SystemConfig& cfg) {
  require_window(tau_b_s, cfg);
  const double rate = (cfg.capacity_gap + 1.0) * cfg.packet_len_bits / (tau_b_s - cfg.tau_p_s);
  return pow2_minus_one(rate / cfg.bandwidth_hz);
}

NomaSplit noma_power_split(double sinr_target, std::span<const double> gains, double sic_threshold,
                           bool strict) {
  if (!(sinr_target > 0.0)) throw std::invalid_argument("SINR target must be positive");
  if (gains.empty()) throw std::invalid_argument("at least one user is required");
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (!(gains[i] > 0.0)) throw std::invalid_argument("gains must be positive");
    if (i > 0 && gains[i] > gains[i - 1]) throw std::invalid_argument("gains must be sorted nonincreasing");
  }
  const std::size_t n = gains.size();
  NomaSplit out;
  out.powers_w.assign(n, 0.0);
  out.sic_margin.assign(n, 0.0);
  double interference = 0.0;  // received power of users weaker than the current one
  for (std::size_t k = n; k-- > 0;) {
    out.powers_w[k] = sinr_target * (1.0 + interference) / gains[k];
    const double received = out.powers_w[k] * gains[k];
    out.sic_margin[k] = received - interference - sic_threshold;
    interference += received;
  }
  out.total_w = 0.0;
  for (double p : out.powers_w) out.total_w += p;
  out.sic_ok = std::all_of(out.sic_margin.begin(), out.sic_margin.end(), [](double m) { return m >= 0.0; });
  if (strict) {
    if (std::any_of(out.powers_w.begin(), out.powers_w.end(), [](double p) { return p < 0.0; })) {
      throw std::domain_error("negative power in SIC split");
    }
    if (!out.sic_ok) throw std::domain_error("SIC residual power condition violated");
  }
  return out;
}

std::vector<double> noma_sinr(std::span<const double> powers_w, std::span<const double> gains) {
  if (powers_w.size() != gains.size()) throw std::invalid_argument("powers and gains differ in size");
  std::vector<double> out(gains.size());
  double interference = 0.0;
  for (std::size_t k = gains.size(); k-- > 0;) {
    const double received = powers_w[k] * gains[k];
    out[k] = received / (1.0 + interference);
    interference += received;
  }
  return out;
}

double capacity(Protocol protocol, double tx_power_w, const DecisionVector& x, const SystemConfig& cfg,
                double gain) {
  require_window(x.tau_b_s, cfg);
  const double window = x.tau_b_s - cfg.tau_p_s;
  const double n = static_cast<double>(cfg.n_devices);
  const double spectral = std::log2(1.0 + tx_power_w * gain);
  switch (protocol) {
    case Protocol::TDMA:
      return cfg.bandwidth_hz * (window / n) / x.tau_b_s * spectral;
    case Protocol::FDMA:
      return subchannel_bandwidth(cfg) * window / x.tau_b_s * spectral;
    case Protocol::NOMA:
      // equal split of the sum rate among the N users
      return cfg.bandwidth_hz * window / x.tau_b_s * spectral / n;
  }
  return 0.0;
}

double energy_efficiency_at_power(Protocol protocol, const DecisionVector& x, const SystemConfig& cfg,
                                  double tx_power_w) {
  require_window(x.tau_b_s, cfg);
  const double window = x.tau_b_s - cfg.tau_p_s;
  const double n = static_cast<double>(cfg.n_devices);
  const double bits = protocol == Protocol::FDMA ? cfg.packet_len_bits : n * cfg.packet_len_bits;
  return bits / (window * tx_power_w);
}

double energy_efficiency(Protocol protocol, Policy, const DecisionVector& x, const SystemConfig& cfg,
                         double gain) {
  return energy_efficiency_at_power(protocol, x, cfg, required_tx_power(protocol, x, cfg, gain).power_w);
}

bool ee_ok(Protocol protocol, Policy policy, const DecisionVector& x, const SystemConfig& cfg, double gain) {
  return energy_efficiency(protocol, policy, x, cfg, gain) >= cfg.ee_min;
}

double idle_power(const SystemConfig& cfg, bool benchmark) {
  const double sleep = benchmark ? cfg.power_active_w : cfg.power_idle_w;
  return (sleep * cfg.switch_ratio + cfg.power_switch_w) / (cfg.switch_ratio + 1.0);
}

double avg_power_consumption(Policy policy, const DecisionVector& x, const SystemConfig& cfg, double tx_power_w,
                             bool benchmark) {
  const double rho = x.lambda_rate * x.tau_b_s;
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("utilisation must lie in (0,1)");
  if (policy == Policy::MV && x.policy_param < 0.0) throw std::invalid_argument("vacation length must be nonnegative");
  if (!(x.tau_b_s >= cfg.tau_p_s)) throw std::invalid_argument("tau_b must not be below tau_p");
  const double active = (x.tau_b_s - cfg.tau_p_s) / x.tau_b_s * tx_power_w + cfg.power_active_w;
  return rho * active + (1.0 - rho) * idle_power(cfg, benchmark);
}

double window_power(Protocol protocol, const SystemConfig& cfg, double tx_power_w) {
  return protocol == Protocol::FDMA ? tx_power_w : tx_power_w / static_cast<double>(cfg.n_devices);
}

PowerReport power_report(Protocol protocol, Policy policy, const DecisionVector& x, const SystemConfig& cfg,
                         double tx_power_w, bool benchmark) {
  PowerReport r;
  r.tx_power_w = tx_power_w;
  r.eh_power_w = x.phi_r_w;
  r.rho = x.lambda_rate * x.tau_b_s;
  r.avg_consumption_w = avg_power_consumption(policy, x, cfg, window_power(protocol, cfg, tx_power_w), benchmark);
  r.ee_bits_per_j = energy_efficiency_at_power(protocol, x, cfg, tx_power_w);
  return r;
}

}  // namespace aoi::phy

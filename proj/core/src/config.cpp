#include "aoi/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "aoi/errors.hpp"
#include "aoi/types.hpp"

namespace aoi {

std::string_view to_string(Protocol p) noexcept {
  switch (p) {
    case Protocol::TDMA: return "TDMA";
    case Protocol::FDMA: return "FDMA";
    case Protocol::NOMA: return "NOMA";
  }
  return "?";
}

std::string_view to_string(Policy p) noexcept {
  switch (p) {
    case Policy::MV: return "MV";
    case Policy::ST: return "ST";
  }
  return "?";
}

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

}  // namespace

std::optional<Protocol> parse_protocol(std::string_view name) {
  const std::string u = upper(name);
  for (Protocol p : kAllProtocols) {
    if (u == to_string(p)) return p;
  }
  return std::nullopt;
}

std::optional<Policy> parse_policy(std::string_view name) {
  const std::string u = upper(name);
  for (Policy p : kAllPolicies) {
    if (u == to_string(p)) return p;
  }
  return std::nullopt;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < n; ++i) {
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.back() = hi;
  return out;
}

SystemConfig default_config() {
  SystemConfig cfg;
  cfg.distances_m = linspace(3.0, 5.0, cfg.n_devices);
  return cfg;
}

const std::vector<std::string>& assumed_default_fields() {
  static const std::vector<std::string> fields{
      "fading_param", "capacity_gap", "ee_min",      "battery_j",  "sic_threshold_w",
      "eh_clamp_w",   "guard_band_hz", "lambda_min", "tau_s_max_s", "m_max"};
  return fields;
}

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw ConfigError(message);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

double subchannel_bandwidth(const SystemConfig& cfg) {
  const double n = static_cast<double>(cfg.n_devices);
  return (cfg.bandwidth_hz - (n - 1.0) * cfg.guard_band_hz) / n;
}

SystemConfig validate_config(const SystemConfig& raw) {
  require(raw.n_devices >= 1, "n_devices must be at least 1");
  require(positive(raw.packet_len_bits), "packet_len_bits must be positive");
  require(positive(raw.bandwidth_hz), "bandwidth_hz must be positive");
  require(nonnegative(raw.guard_band_hz), "guard_band_hz must be nonnegative");
  require(positive(subchannel_bandwidth(raw)), "guard bands leave no subchannel bandwidth");
  require(positive(raw.noise_psd), "noise_psd must be positive");
  require(positive(raw.carrier_hz), "carrier_hz must be positive");
  require(raw.distances_m.size() == static_cast<std::size_t>(raw.n_devices),
          "distances_m must have n_devices entries");
  require(std::all_of(raw.distances_m.begin(), raw.distances_m.end(), positive),
          "distances_m must be positive");
  require(std::is_sorted(raw.distances_m.begin(), raw.distances_m.end()),
          "distances_m not sorted ascending");
  require(positive(raw.fading_param), "fading_param must be positive");
  require(positive(raw.pathloss_exp), "pathloss_exp must be positive");
  require(std::isfinite(raw.eh_efficiency) && raw.eh_efficiency > 0.0 && raw.eh_efficiency < 1.0,
          "eh_efficiency out of (0,1)");
  require(positive(raw.eh_clamp_w), "eh_clamp_w must be positive");
  require(positive(raw.sic_threshold_w), "sic_threshold_w must be positive");
  require(positive(raw.tau_p_s), "tau_p_s must be positive");
  require(positive(raw.tau_b_max_s), "tau_b_max_s must be positive");
  require(raw.tau_p_s < raw.tau_b_max_s, "tau_p exceeds tau_b_max");
  require(positive(raw.tau_s_max_s), "tau_s_max_s must be positive");
  require(nonnegative(raw.tau_s_min_s), "tau_s_min_s must be nonnegative");
  require(raw.tau_s_min_s <= raw.tau_s_max_s, "tau_s_min exceeds tau_s_max");
  require(positive(raw.lambda_min), "lambda_min must be positive");
  require(positive(raw.lambda_max), "lambda_max must be positive");
  require(raw.lambda_min <= raw.lambda_max, "lambda_min exceeds lambda_max");
  require(positive(raw.phi_r_max_w), "phi_r_max_w must be positive");
  require(positive(raw.phi_t_max_w), "phi_t_max_w must be positive");
  require(positive(raw.battery_j), "battery_j must be positive");
  require(positive(raw.capacity_gap), "capacity_gap must be positive");
  require(positive(raw.ee_min), "ee_min must be positive");
  require(positive(raw.power_active_w), "power_active_w must be positive");
  require(positive(raw.power_idle_w), "power_idle_w must be positive");
  require(positive(raw.power_switch_w), "power_switch_w must be positive");
  require(positive(raw.switch_ratio), "switch_ratio must be positive");
  require(raw.m_min >= 1, "m_min must be at least 1");
  require(raw.m_min <= raw.m_max, "m_min exceeds m_max");
  return raw;
}

SystemConfig with_devices(const SystemConfig& cfg, int n) {
  SystemConfig out = cfg;
  out.n_devices = n;
  if (n >= 1 && !cfg.distances_m.empty()) {
    out.distances_m = linspace(cfg.distances_m.front(), cfg.distances_m.back(), n);
  }
  return out;
}

}  // namespace aoi

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace aoi {

// Physical and protocol constants. All fields are SI after loading; the
// noise density is stored in W/Hz.
struct SystemConfig {
  int n_devices = 10;
  double packet_len_bits = 100.0;
  double bandwidth_hz = 5e6;
  double guard_band_hz = 1e4;
  double noise_psd = 1e-9;
  double carrier_hz = 470e6;
  std::vector<double> distances_m;
  double fading_param = 600.0;
  double pathloss_exp = 2.0;
  double eh_efficiency = 0.9;
  double eh_clamp_w = 5.0;
  double sic_threshold_w = 1e-3;
  double tau_p_s = 0.01;
  double tau_b_max_s = 0.04;
  double tau_s_max_s = 0.1;
  double tau_s_min_s = 0.0;
  double lambda_min = 1.0;
  double lambda_max = 15.0;
  double phi_r_max_w = 4.0;
  double phi_t_max_w = 0.4;
  double battery_j = 0.01;
  double capacity_gap = 1.0;
  double ee_min = 1e5;
  double power_active_w = 0.1;
  double power_idle_w = 0.01;
  double power_switch_w = 0.1;
  double switch_ratio = 9.0;
  int m_min = 1;
  int m_max = 10;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

// Defaults used by the tools. Fields not stated numerically in the source
// model are listed by assumed_default_fields().
SystemConfig default_config();

// Names of fields whose default values are assumptions rather than
// published parameters.
const std::vector<std::string>& assumed_default_fields();

// n evenly spaced values over [lo, hi] (lo alone when n == 1).
std::vector<double> linspace(double lo, double hi, int n);

// Checks every invariant, throwing ConfigError naming the first violation.
// Returns the config unchanged when valid, so the call is idempotent.
SystemConfig validate_config(const SystemConfig& raw);

// Copy of cfg with n devices, distances respread evenly between the
// current nearest and farthest device.
SystemConfig with_devices(const SystemConfig& cfg, int n);

// Usable bandwidth per FDMA subchannel after guard bands.
double subchannel_bandwidth(const SystemConfig& cfg);

// JSON I/O. Keys are the field names. A bare number is read in the SI unit
// named by the key (noise_psd: dBm/Hz); a string "<value> <unit>" is
// converted, e.g. "5 MHz", "10 ms", "400 mW", "-60 dBm/Hz". Unspecified keys
// keep their defaults. Throws ConfigError on unknown keys or bad units.
SystemConfig parse_config(std::string_view json_text);
SystemConfig load_config(const std::filesystem::path& path);

// Canonical JSON (sorted keys, SI numbers, noise_psd in dBm/Hz). Feeding the
// output back to parse_config reproduces the config.
std::string config_to_json(const SystemConfig& cfg, int indent = 2);

// 64-bit FNV-1a of the canonical compact JSON, as 16 hex digits.
std::string config_hash(const SystemConfig& cfg);

}  // namespace aoi

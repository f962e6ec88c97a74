#pragma once

#include <span>
#include <vector>

#include "aoi/config.hpp"
#include "aoi/types.hpp"

namespace aoi::phy {

struct ChannelState {
  std::vector<double> gains;   // noise-normalised power gains
  std::vector<double> coeffs;  // amplitude coefficients |h|
};

struct PowerReport {
  double tx_power_w = 0.0;
  double eh_power_w = 0.0;
  double avg_consumption_w = 0.0;
  double ee_bits_per_j = 0.0;
  double rho = 0.0;
};

struct TxPower {
  double power_w = 0.0;
  bool within_limit = false;
};

struct NomaSplit {
  std::vector<double> powers_w;
  double total_w = 0.0;
  // received power of user n minus the weaker users' received power minus
  // the threshold; nonnegative when SIC can separate user n
  std::vector<double> sic_margin;
  bool sic_ok = false;
};

struct PowerSegment {
  double duration_s = 0.0;
  double power_w = 0.0;
};

double channel_coefficient(double d_m, const SystemConfig& cfg);

// Bandwidth over which noise is collected: the full band for TDMA and NOMA,
// one subchannel for FDMA.
double noise_bandwidth(const SystemConfig& cfg, Protocol protocol);

double channel_gain(double d_m, const SystemConfig& cfg, Protocol protocol);

// Gains of every device in config order. Distances are ascending, so gains
// come out nonincreasing as SIC ordering requires.
ChannelState channel_state(const SystemConfig& cfg, Protocol protocol);

double eh_power(double phi_wp_w, double h_p, const SystemConfig& cfg);
double eh_energy(double tau_p_s, double phi_r_w);
double eh_energy(std::span<const PowerSegment> profile);

// Base-2 exponent e such that the required power is (2^e - 1)/gain.
double rate_exponent(Protocol protocol, double tau_b_s, const SystemConfig& cfg);

// Minimum transmit power delivering one packet per cycle. For NOMA this is
// the total power of all users with a common gain.
TxPower required_tx_power(Protocol protocol, const DecisionVector& x, const SystemConfig& cfg, double gain);

// Per-user SINR target for equal-rate NOMA.
double noma_sinr_target(double tau_b_s, const SystemConfig& cfg);

// Equal-SINR backward recursion. gains must be positive and nonincreasing.
// With strict set, SIC violations throw std::domain_error instead of only
// being flagged.
NomaSplit noma_power_split(double sinr_target, std::span<const double> gains, double sic_threshold = 0.0,
                           bool strict = false);

// SINR of every user after cancelling the stronger users.
std::vector<double> noma_sinr(std::span<const double> powers_w, std::span<const double> gains);

// Time-averaged achievable rate in bits/s at the given transmit power.
double capacity(Protocol protocol, double tx_power_w, const DecisionVector& x, const SystemConfig& cfg,
                double gain);

// Delivered bits per joule of transmit energy.
double energy_efficiency(Protocol protocol, Policy policy, const DecisionVector& x, const SystemConfig& cfg,
                         double gain);
double energy_efficiency_at_power(Protocol protocol, const DecisionVector& x, const SystemConfig& cfg,
                                  double tx_power_w);
bool ee_ok(Protocol protocol, Policy policy, const DecisionVector& x, const SystemConfig& cfg, double gain);

// Power drawn while the device is not serving packets, blended over the
// switching and idle parts of a vacation.
double idle_power(const SystemConfig& cfg, bool benchmark);

// Average consumption of one device. tx_power_w is the power radiated over
// the transmission window (tau_b - tau_p).
double avg_power_consumption(Policy policy, const DecisionVector& x, const SystemConfig& cfg, double tx_power_w,
                             bool benchmark);

// tx_power_w is the protocol-level figure (per-device power for TDMA/FDMA,
// total power for NOMA).
PowerReport power_report(Protocol protocol, Policy policy, const DecisionVector& x, const SystemConfig& cfg,
                         double tx_power_w, bool benchmark);

// Per-device power over the transmission window implied by a
// protocol-level transmit power.
double window_power(Protocol protocol, const SystemConfig& cfg, double tx_power_w);

}  // namespace aoi::phy

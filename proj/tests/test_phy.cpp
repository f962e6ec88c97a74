#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aoi/config.hpp"
#include "aoi/phy.hpp"
#include "support/oracles.hpp"

namespace phy = aoi::phy;
using aoi::Policy;
using aoi::Protocol;

namespace {

aoi::SystemConfig defaults() { return aoi::validate_config(aoi::default_config()); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(Channel, UnitCancellationCase) {
  aoi::SystemConfig cfg = defaults();
  cfg.fading_param = 1.0;
  cfg.pathloss_exp = 2.0;
  cfg.bandwidth_hz = 1e6;
  cfg.noise_psd = 1e-12;
  EXPECT_NEAR(phy::channel_gain(1.0, cfg, Protocol::TDMA), 1.0, 1e-12);
  EXPECT_NEAR(phy::channel_gain(1.0, cfg, Protocol::NOMA), 1.0, 1e-12);
}

TEST(Channel, DoublingDistanceWithSquareLawQuartersCoefficientSquared) {
  const aoi::SystemConfig cfg = defaults();
  for (Protocol p : aoi::kAllProtocols) {
    for (double d : {1.0, 3.0, 4.2}) {
      EXPECT_NEAR(phy::channel_gain(2 * d, cfg, p) / phy::channel_gain(d, cfg, p), 1.0 / 16.0, 1e-14);
    }
  }
  EXPECT_THROW(phy::channel_gain(0.0, cfg, Protocol::TDMA), std::invalid_argument);
}

TEST(Channel, DefaultsRecomputedStraightLine) {
  aoi::SystemConfig cfg = defaults();
  cfg.fading_param = 1.0;
  const double h = 1e-3 * 1.0 / (3.0 * 3.0);
  EXPECT_LE(rel(phy::channel_gain(3.0, cfg, Protocol::TDMA), h * h / (5e6 * 1e-9)), 1e-12);
  const double b_sub = (5e6 - 9 * 1e4) / 10.0;
  EXPECT_LE(rel(phy::channel_gain(3.0, cfg, Protocol::FDMA), h * h / (b_sub * 1e-9)), 1e-12);
  EXPECT_LE(rel(phy::channel_coefficient(3.0, cfg), h), 1e-15);
}

TEST(Channel, StateGainsAreNonincreasingForSortedDistances) {
  const auto st = phy::channel_state(defaults(), Protocol::NOMA);
  ASSERT_EQ(st.gains.size(), 10u);
  for (std::size_t i = 1; i < st.gains.size(); ++i) EXPECT_LE(st.gains[i], st.gains[i - 1]);
  for (std::size_t i = 0; i < st.gains.size(); ++i) EXPECT_GT(st.coeffs[i], 0.0);
}

TEST(Harvesting, PowerHandValuesAndClamp) {
  aoi::SystemConfig cfg = defaults();
  cfg.eh_clamp_w = 0.5;
  EXPECT_NEAR(phy::eh_power(4.0, 0.1, cfg), 0.36, 1e-15);
  EXPECT_DOUBLE_EQ(phy::eh_power(10.0, 0.1, cfg), 0.5);
  EXPECT_DOUBLE_EQ(phy::eh_power(0.0, 0.1, cfg), 0.0);
  double prev = 0.0;
  for (double w = 0.0; w <= 20.0; w += 0.1) {
    const double p = phy::eh_power(w, 0.1, cfg);
    EXPECT_GE(p, prev);
    EXPECT_LE(p, cfg.eh_clamp_w);
    prev = p;
  }
}

TEST(Harvesting, EnergyRectangleAndPiecewiseProfileAgainstQuadrature) {
  EXPECT_NEAR(phy::eh_energy(0.01, 4.0), 0.04, 1e-17);
  EXPECT_EQ(phy::eh_energy(0.0, 3.0), 0.0);
  const std::vector<phy::PowerSegment> profile{{0.002, 1.0}, {0.003, 4.0}, {0.001, 0.5}, {0.004, 2.5}};
  double end = 0.0;
  for (const auto& s : profile) end += s.duration_s;
  auto power_at = [&](double t) {
    double start = 0.0;
    for (const auto& s : profile) {
      if (t < start + s.duration_s) return s.power_w;
      start += s.duration_s;
    }
    return profile.back().power_w;
  };
  const double quad = oracle::trapezoid(power_at, 0.0, end, 200000);
  EXPECT_NEAR(phy::eh_energy(profile), quad, 1e-7);
}

TEST(TransmitPower, UnitExponentGivesOneWatt) {
  aoi::SystemConfig cfg = defaults();
  cfg.n_devices = 1;
  cfg.distances_m = {3.0};
  cfg.capacity_gap = 1.0;
  cfg.bandwidth_hz = 1e6;
  cfg.packet_len_bits = 5000.0;  // (1+1)*1*5000 = (0.02-0.01)*1e6
  const aoi::DecisionVector x{1.0, 0.02, 0.0, 0.0};
  EXPECT_NEAR(phy::rate_exponent(Protocol::TDMA, 0.02, cfg), 1.0, 1e-15);
  EXPECT_NEAR(phy::required_tx_power(Protocol::TDMA, x, cfg, 1.0).power_w, 1.0, 1e-14);
}

TEST(TransmitPower, DecreasesInSlotAndDivergesAtHarvestSlot) {
  const aoi::SystemConfig cfg = defaults();
  const double g = phy::channel_gain(5.0, cfg, Protocol::TDMA);
  double prev = INFINITY;
  for (double tau = 0.0101; tau <= 0.04; tau += 0.0001) {
    const double p = phy::required_tx_power(Protocol::TDMA, {1.0, tau, 0.0, 0.0}, cfg, g).power_w;
    EXPECT_LT(p, prev);
    prev = p;
  }
  EXPECT_GT(phy::required_tx_power(Protocol::TDMA, {1.0, 0.01 + 1e-6, 0.0, 0.0}, cfg, g).power_w, 1e6);
  EXPECT_THROW(phy::required_tx_power(Protocol::TDMA, {1.0, 0.01, 0.0, 0.0}, cfg, g), std::invalid_argument);
}

TEST(TransmitPower, ProtocolsCoincideForOneDevice) {
  aoi::SystemConfig cfg = defaults();
  cfg = aoi::with_devices(cfg, 1);
  cfg.guard_band_hz = 0.0;
  for (double tau : {0.012, 0.02, 0.035}) {
    const aoi::DecisionVector x{1.0, tau, 0.0, 0.0};
    const double gt = phy::channel_gain(3.0, cfg, Protocol::TDMA);
    const double gf = phy::channel_gain(3.0, cfg, Protocol::FDMA);
    const double gn = phy::channel_gain(3.0, cfg, Protocol::NOMA);
    const double t = phy::required_tx_power(Protocol::TDMA, x, cfg, gt).power_w;
    EXPECT_LE(rel(phy::required_tx_power(Protocol::FDMA, x, cfg, gf).power_w, t), 1e-14);
    EXPECT_LE(rel(phy::required_tx_power(Protocol::NOMA, x, cfg, gn).power_w, t), 1e-14);
    EXPECT_LE(rel(phy::energy_efficiency(Protocol::NOMA, Policy::MV, x, cfg, gn),
                  phy::energy_efficiency(Protocol::TDMA, Policy::MV, x, cfg, gt)),
              1e-14);
  }
}

TEST(TransmitPower, CapacityInversionRoundTrip) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    aoi::SystemConfig cfg = aoi::with_devices(defaults(), 1 + static_cast<int>(u(gen) * 20));
    cfg.packet_len_bits = 40 + 400 * u(gen);
    const double tau = cfg.tau_p_s + (cfg.tau_b_max_s - cfg.tau_p_s) * (0.05 + 0.95 * u(gen));
    const aoi::DecisionVector x{1.0, tau, 0.0, 0.0};
    const double target = (cfg.capacity_gap + 1.0) * cfg.packet_len_bits / tau;
    for (Protocol p : aoi::kAllProtocols) {
      const double g = phy::channel_gain(cfg.distances_m.back(), cfg, p);
      const double power = phy::required_tx_power(p, x, cfg, g).power_w;
      EXPECT_LE(rel(phy::capacity(p, power, x, cfg, g), target), 1e-9);
    }
  }
}

TEST(Noma, TwoEqualUsersAtUnitTarget) {
  const std::vector<double> g{1.0, 1.0};
  const auto s = phy::noma_power_split(1.0, g);
  ASSERT_EQ(s.powers_w.size(), 2u);
  EXPECT_DOUBLE_EQ(s.powers_w[0], 2.0);
  EXPECT_DOUBLE_EQ(s.powers_w[1], 1.0);
  EXPECT_DOUBLE_EQ(s.total_w, 3.0);
  EXPECT_DOUBLE_EQ(s.total_w, std::pow(2.0, 2.0 * std::log2(2.0)) - 1.0);
}

TEST(Noma, SingleUserHasNoInterference) {
  const std::vector<double> g{0.25};
  EXPECT_DOUBLE_EQ(phy::noma_power_split(3.0, g).powers_w[0], 12.0);
}

TEST(Noma, ForwardSubstitutionReturnsTargetForEveryUser) {
  std::mt19937_64 gen(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(u(gen) * 10) % 10;
    std::vector<double> g(n);
    for (auto& x : g) x = std::exp(-6.0 + 12.0 * u(gen));
    std::sort(g.begin(), g.end(), std::greater<>());
    const double theta = std::exp(-4.0 + 6.0 * u(gen));
    const auto split = phy::noma_power_split(theta, g);
    const auto sinr = oracle::uplink_sinr(split.powers_w, g);
    for (double s : sinr) EXPECT_LE(std::abs(s - theta) / theta, 1e-12);
    const auto lib = phy::noma_sinr(split.powers_w, g);
    for (std::size_t k = 0; k < n; ++k) EXPECT_LE(std::abs(lib[k] - sinr[k]) / theta, 1e-12);
  }
}

TEST(Noma, EqualGainTotalMatchesClosedForm) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (double gain : {0.01, 1.0, 50.0}) {
      for (double theta : {0.05, 1.0, 3.0}) {
        const std::vector<double> g(n, gain);
        const double closed = (std::pow(1.0 + theta, static_cast<double>(n)) - 1.0) / gain;
        EXPECT_LE(rel(phy::noma_power_split(theta, g).total_w, closed), 1e-12);
      }
    }
  }
}

TEST(Noma, ClosedFormTotalEqualsSplitWithCommonGain) {
  aoi::SystemConfig cfg = defaults();
  const double g = phy::channel_gain(5.0, cfg, Protocol::NOMA);
  for (double tau : {0.012, 0.02, 0.04}) {
    const std::vector<double> gains(static_cast<std::size_t>(cfg.n_devices), g);
    const auto split = phy::noma_power_split(phy::noma_sinr_target(tau, cfg), gains);
    const double closed = phy::required_tx_power(Protocol::NOMA, {1.0, tau, 0.0, 0.0}, cfg, g).power_w;
    EXPECT_LE(rel(split.total_w, closed), 1e-12);
  }
}

TEST(Noma, SicMarginsAreFlaggedAndStrictModeThrows) {
  const std::vector<double> g{1.0, 1.0, 1.0, 1.0};
  const auto loose = phy::noma_power_split(0.2, g, 1e-3);
  EXPECT_FALSE(loose.sic_ok);
  // user 1 margin = theta(1+I) - I - threshold with I the weaker users' received power
  double interference = 0.0;
  for (std::size_t k = g.size(); k-- > 1;) interference += loose.powers_w[k] * g[k];
  EXPECT_NEAR(loose.sic_margin[0], loose.powers_w[0] * g[0] - interference - 1e-3, 1e-12);
  EXPECT_THROW(phy::noma_power_split(0.2, g, 1e-3, true), std::domain_error);
  const std::vector<double> two{1.0, 1.0};
  EXPECT_TRUE(phy::noma_power_split(1.0, two, 1e-3, true).sic_ok);
  EXPECT_THROW(phy::noma_power_split(1.0, std::vector<double>{1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(phy::noma_power_split(-1.0, two), std::invalid_argument);
}

TEST(EnergyEfficiency, BoundaryAndMonotoneInSlot) {
  aoi::SystemConfig cfg = defaults();
  const double g = phy::channel_gain(5.0, cfg, Protocol::TDMA);
  const aoi::DecisionVector x{1.0, 0.02, 0.0, 0.0};
  cfg.ee_min = phy::energy_efficiency(Protocol::TDMA, Policy::MV, x, cfg, g);
  EXPECT_TRUE(phy::ee_ok(Protocol::TDMA, Policy::MV, x, cfg, g));
  cfg.ee_min *= 1.0 + 1e-12;
  EXPECT_FALSE(phy::ee_ok(Protocol::TDMA, Policy::MV, x, cfg, g));

  const aoi::SystemConfig d = defaults();
  double prev = 0.0;
  for (double tau = 0.0105; tau <= 0.04; tau += 0.0005) {
    const double ee = phy::energy_efficiency(Protocol::TDMA, Policy::MV, {1.0, tau, 0.0, 0.0}, d, g);
    EXPECT_GT(ee, prev);
    prev = ee;
  }
}

TEST(EnergyEfficiency, DeliveredBitsPerTransmitJoule) {
  const aoi::SystemConfig cfg = defaults();
  const aoi::DecisionVector x{1.0, 0.03, 0.0, 0.0};
  EXPECT_NEAR(phy::energy_efficiency_at_power(Protocol::TDMA, x, cfg, 0.2), 10 * 100 / (0.02 * 0.2), 1e-6);
  EXPECT_NEAR(phy::energy_efficiency_at_power(Protocol::FDMA, x, cfg, 0.2), 100 / (0.02 * 0.2), 1e-8);
  EXPECT_NEAR(phy::energy_efficiency_at_power(Protocol::NOMA, x, cfg, 0.2), 10 * 100 / (0.02 * 0.2), 1e-6);
}

TEST(AveragePower, WorkedExample) {
  const aoi::SystemConfig cfg = defaults();
  const aoi::DecisionVector x{25.0, 0.02, 0.01, 0.0};
  for (Policy p : aoi::kAllPolicies) {
    EXPECT_NEAR(phy::avg_power_consumption(p, x, cfg, 0.2, false), 0.1095, 1e-12);
    EXPECT_NEAR(phy::avg_power_consumption(p, x, cfg, 0.2, true), 0.150, 1e-12);
  }
}

TEST(AveragePower, AlwaysActiveLimit) {
  const aoi::SystemConfig cfg = defaults();
  const double tau = 0.02;
  const double limit = (tau - cfg.tau_p_s) / tau * 0.2 + cfg.power_active_w;
  const double near_one = phy::avg_power_consumption(Policy::MV, {(1.0 - 1e-9) / tau, tau, 0.01, 0.0}, cfg, 0.2, false);
  EXPECT_NEAR(near_one, limit, 1e-9);
  EXPECT_THROW(phy::avg_power_consumption(Policy::MV, {1.0 / tau, tau, 0.01, 0.0}, cfg, 0.2, false),
               std::invalid_argument);
}

TEST(AveragePower, SleepSchedulingNeverExceedsBenchmark) {
  aoi::SystemConfig cfg = defaults();
  for (int i = 1; i <= 50; ++i) {
    const double rho = i / 51.0;
    for (double tau : {0.011, 0.02, 0.04}) {
      const aoi::DecisionVector x{rho / tau, tau, 0.01, 0.0};
      for (Policy p : aoi::kAllPolicies) {
        EXPECT_LT(phy::avg_power_consumption(p, x, cfg, 0.2, false), phy::avg_power_consumption(p, x, cfg, 0.2, true));
      }
    }
  }
  cfg.power_idle_w = cfg.power_active_w;
  const aoi::DecisionVector x{25.0, 0.02, 0.01, 0.0};
  EXPECT_DOUBLE_EQ(phy::avg_power_consumption(Policy::MV, x, cfg, 0.2, false),
                   phy::avg_power_consumption(Policy::MV, x, cfg, 0.2, true));
}

TEST(AveragePower, WindowPowerAndReport) {
  const aoi::SystemConfig cfg = defaults();
  EXPECT_DOUBLE_EQ(phy::window_power(Protocol::TDMA, cfg, 1.0), 0.1);
  EXPECT_DOUBLE_EQ(phy::window_power(Protocol::NOMA, cfg, 1.0), 0.1);
  EXPECT_DOUBLE_EQ(phy::window_power(Protocol::FDMA, cfg, 1.0), 1.0);
  const aoi::DecisionVector x{25.0, 0.02, 0.01, 0.05};
  const auto r = phy::power_report(Protocol::FDMA, Policy::MV, x, cfg, 0.2, false);
  EXPECT_NEAR(r.avg_consumption_w, 0.1095, 1e-12);
  EXPECT_DOUBLE_EQ(r.rho, 0.5);
  EXPECT_DOUBLE_EQ(r.eh_power_w, 0.05);
  EXPECT_GT(r.ee_bits_per_j, 0.0);
}

}  // namespace

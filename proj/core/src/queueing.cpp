#include "aoi/queueing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "aoi/errors.hpp"

namespace aoi::queueing {

namespace {

constexpr double kSeriesSwitch = 1e-10;

void require_unit_interval(double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw std::invalid_argument("z must lie in [0,1]");
}

// (expm1(-rho u) + u) / u, i.e. (K - z)/(1 - z) with K = exp(-rho (1 - z)).
double reduced_denominator(double rho, double u) {
  const double d = std::expm1(-rho * u) + u;
  if (std::abs(d) >= kSeriesSwitch) return d / u;
  const double r2 = rho * rho;
  return (1.0 - rho) + r2 * u / 2.0 - r2 * rho * u * u / 6.0 + r2 * r2 * u * u * u / 24.0;
}

double md1_age(double lambda, double tau) {
  const double rho = lambda * tau;
  return tau + lambda * tau * tau / (2.0 * (1.0 - rho)) + 1.0 / lambda;
}

AoIBreakdown assemble(double md1_part, double additional, double mean_delay) {
  AoIBreakdown out;
  out.md1_age_s = md1_part;
  out.additional_age_s = additional;
  out.total_peak_aoi_s = md1_part + additional;
  out.mean_delay_s = mean_delay;
  out.per_packet_aoi_s = (mean_delay + out.total_peak_aoi_s) / 2.0;
  return out;
}

void require_threshold(double m) {
  if (!(m >= 1.0)) throw std::invalid_argument("threshold must be at least 1");
}

}  // namespace

bool is_stable(double lambda_rate, double service_s) noexcept {
  return lambda_rate > 0.0 && service_s > 0.0 && lambda_rate * service_s <= 1.0 - kStabilityMargin;
}

void require_stable(double lambda_rate, double service_s) {
  if (!(lambda_rate > 0.0) || !(service_s > 0.0)) {
    throw std::invalid_argument("arrival rate and service time must be positive");
  }
  if (!(lambda_rate * service_s <= 1.0 - kStabilityMargin)) {
    throw UnstableError("unstable queue: lambda*tau = " + std::to_string(lambda_rate * service_s));
  }
}

double md1_queue_pgf(const QueueParams& p, double z) {
  require_stable(p.lambda_rate, p.service_s);
  require_unit_interval(z);
  const double rho = p.lambda_rate * p.service_s;
  const double u = 1.0 - z;
  if (u == 0.0) return 1.0;
  const double k = std::exp(-rho * u);
  return (1.0 - rho) * k / reduced_denominator(rho, u);
}

double md1_mean_queue(const QueueParams& p) {
  require_stable(p.lambda_rate, p.service_s);
  const double rho = p.lambda_rate * p.service_s;
  return rho + rho * rho / (2.0 * (1.0 - rho));
}

double md1_mean_delay(const QueueParams& p) {
  require_stable(p.lambda_rate, p.service_s);
  const double tau = p.service_s;
  const double rho = p.lambda_rate * tau;
  return tau + p.lambda_rate * tau * tau / (2.0 * (1.0 - rho));
}

double mv_vacation_pgf(const QueueParams& p, double z) {
  if (!(p.vacation_s > 0.0)) throw std::invalid_argument("vacation length must be positive");
  if (!(p.lambda_rate > 0.0)) throw std::invalid_argument("arrival rate must be positive");
  const double a = p.lambda_rate * p.vacation_s;
  return std::expm1(a * z) / std::expm1(a);
}

double mv_queue_pgf(const QueueParams& p, double z) {
  if (p.vacation_s < 0.0) throw std::invalid_argument("vacation length must be nonnegative");
  const double base = md1_queue_pgf(p, z);
  const double au = p.lambda_rate * p.vacation_s * (1.0 - z);
  if (au == 0.0) return base;
  return base * (-std::expm1(-au)) / au;
}

double mv_mean_queue(const QueueParams& p) {
  require_stable(p.lambda_rate, p.service_s);
  if (p.vacation_s < 0.0) throw std::invalid_argument("vacation length must be nonnegative");
  const double rho = p.lambda_rate * p.service_s;
  const double a = p.lambda_rate * p.vacation_s;
  return (2.0 * rho + a * (1.0 - rho) - rho * rho) / (2.0 * (1.0 - rho));
}

double mv_mean_delay(const QueueParams& p) { return mv_mean_queue(p) / p.lambda_rate; }

double st_stationary_pgf(const QueueParams& p, double z) {
  require_stable(p.lambda_rate, p.service_s);
  require_threshold(p.threshold);
  require_unit_interval(z);
  const double rho = p.lambda_rate * p.service_s;
  const double u = 1.0 - z;
  if (u == 0.0) return 1.0;
  // (1 - z^M)/(1 - z) as a finite geometric sum
  double geometric = 0.0;
  double power = 1.0;
  for (int k = 0; k < p.threshold; ++k) {
    geometric += power;
    power *= z;
  }
  const double k = std::exp(-rho * u);
  return (1.0 - rho) * k * geometric / (p.threshold * reduced_denominator(rho, u));
}

double st_empty_probability(const QueueParams& p) {
  require_stable(p.lambda_rate, p.service_s);
  require_threshold(p.threshold);
  return (1.0 - p.lambda_rate * p.service_s) / p.threshold;
}

double st_mean_queue(const QueueParams& p) {
  require_threshold(p.threshold);
  return md1_mean_queue(p) + (p.threshold - 1) / 2.0;
}

double st_mean_delay(const QueueParams& p) { return st_mean_queue(p) / p.lambda_rate; }

AoIBreakdown peak_aoi_mv(const QueueParams& p) {
  const double delay = mv_mean_delay(p);
  return assemble(md1_age(p.lambda_rate, p.service_s), p.vacation_s / 2.0, delay);
}

AoIBreakdown peak_aoi_st(const QueueParams& p) {
  require_threshold(p.threshold);
  const double delay = st_mean_delay(p);
  return assemble(md1_age(p.lambda_rate, p.service_s), (p.threshold - 1) / (2.0 * p.lambda_rate), delay);
}

AoIBreakdown peak_aoi_st_relaxed(double lambda_rate, double tau_b_s, double threshold) {
  require_stable(lambda_rate, tau_b_s);
  require_threshold(threshold);
  const double additional = (threshold - 1.0) / (2.0 * lambda_rate);
  const double delay = md1_mean_delay({lambda_rate, tau_b_s, 0.0, 1}) + additional;
  return assemble(md1_age(lambda_rate, tau_b_s), additional, delay);
}

double md1_peak_aoi(double lambda_rate, double tau_b_s) {
  require_stable(lambda_rate, tau_b_s);
  return md1_age(lambda_rate, tau_b_s);
}

double peak_aoi_mv_value(double lambda_rate, double tau_b_s, double tau_s_s) {
  return md1_peak_aoi(lambda_rate, tau_b_s) + tau_s_s / 2.0;
}

double peak_aoi_st_value(double lambda_rate, double tau_b_s, double threshold) {
  return md1_peak_aoi(lambda_rate, tau_b_s) + (threshold - 1.0) / (2.0 * lambda_rate);
}

AoIBreakdown protocol_peak_aoi(Protocol, Policy policy, const DecisionVector& x) {
  if (policy == Policy::MV) {
    return peak_aoi_mv({x.lambda_rate, x.tau_b_s, x.policy_param, 1});
  }
  return peak_aoi_st_relaxed(x.lambda_rate, x.tau_b_s, x.policy_param);
}

}  // namespace aoi::queueing

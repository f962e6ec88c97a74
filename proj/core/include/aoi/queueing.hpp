#pragma once

#include "aoi/types.hpp"

namespace aoi::queueing {

// Single-server FIFO queue with Poisson arrivals and deterministic service.
// vacation_s applies to the MV policy, threshold to the ST policy.
struct QueueParams {
  double lambda_rate = 0.0;
  double service_s = 0.0;
  double vacation_s = 0.0;
  int threshold = 1;
};

struct AoIBreakdown {
  double md1_age_s = 0.0;
  double additional_age_s = 0.0;
  double total_peak_aoi_s = 0.0;
  double mean_delay_s = 0.0;
  double per_packet_aoi_s = 0.0;
};

// Throws std::invalid_argument for nonpositive inputs and UnstableError
// unless lambda * service <= 1 - kStabilityMargin.
void require_stable(double lambda_rate, double service_s);
bool is_stable(double lambda_rate, double service_s) noexcept;

// M/D/1 departure-epoch queue length.
double md1_queue_pgf(const QueueParams& p, double z);
double md1_mean_queue(const QueueParams& p);
double md1_mean_delay(const QueueParams& p);

// Number of arrivals during a vacation, conditioned on at least one.
double mv_vacation_pgf(const QueueParams& p, double z);

// Departure-epoch queue length under multiple vacations: the M/D/1 part
// times the residual vacation-arrival factor.
double mv_queue_pgf(const QueueParams& p, double z);
double mv_mean_queue(const QueueParams& p);
double mv_mean_delay(const QueueParams& p);

// Departure-epoch queue length under the start-up threshold policy.
double st_stationary_pgf(const QueueParams& p, double z);
double st_empty_probability(const QueueParams& p);
double st_mean_queue(const QueueParams& p);
double st_mean_delay(const QueueParams& p);

AoIBreakdown peak_aoi_mv(const QueueParams& p);
AoIBreakdown peak_aoi_st(const QueueParams& p);

// Scalar forms for optimizers. The ST threshold may be real (relaxed).
double md1_peak_aoi(double lambda_rate, double tau_b_s);
double peak_aoi_mv_value(double lambda_rate, double tau_b_s, double tau_s_s);
double peak_aoi_st_value(double lambda_rate, double tau_b_s, double threshold);

// Breakdown with a real-valued threshold.
AoIBreakdown peak_aoi_st_relaxed(double lambda_rate, double tau_b_s, double threshold);

// The AoI expression is the same for every protocol; the protocol only
// changes which decision vectors are feasible.
AoIBreakdown protocol_peak_aoi(Protocol protocol, Policy policy, const DecisionVector& x);

}  // namespace aoi::queueing

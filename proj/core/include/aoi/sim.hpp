#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "aoi/batch_means.hpp"
#include "aoi/config.hpp"
#include "aoi/queueing.hpp"
#include "aoi/types.hpp"

namespace aoi::sim {

struct SimSpec {
  queueing::QueueParams params;
  Policy policy = Policy::MV;
  std::int64_t target_departures = 1'000'000;  // including warmup
  std::int64_t warmup_departures = -1;         // negative: 10% of target
  std::uint64_t seed = 1;
  int batch_count = 20;
  std::uint64_t replication = 0;
};

struct QueueStats {
  Estimate mean_delay_s;
  Estimate mean_peak_aoi_s;
  Estimate mean_per_packet_aoi_s;  // mean over departures of interval-average age
  Estimate mean_queue_len;         // time average, packets in system
  Estimate rho_observed;
  Estimate time_average_aoi_s;     // total age area over total time
  std::int64_t departures = 0;     // measured departures (after warmup)
  double busy_fraction = 0.0;
  double idle_fraction = 0.0;
  double sim_time_s = 0.0;         // measured time span
  std::vector<std::int64_t> departure_histogram;  // packets left behind

  double departure_pgf(double z) const;
  double departure_mean_queue() const;
};

struct EnergyStats {
  Estimate avg_power_w;
  double active_j = 0.0;
  double tx_j = 0.0;
  double idle_j = 0.0;
  double switch_j = 0.0;
  double sim_time_s = 0.0;
};

enum class EventKind { Arrival, ServiceStart, Departure, VacationStart, VacationEnd, Wake };

std::string_view to_string(EventKind kind) noexcept;

struct TraceEvent {
  double time_s = 0.0;
  EventKind kind = EventKind::Arrival;
  std::int64_t queue_len = 0;
};

std::int64_t effective_warmup(const SimSpec& spec);

// Throws std::invalid_argument for malformed specs and, when steady_state is
// set, UnstableError for lambda * tau_b >= 1.
void validate_spec(const SimSpec& spec, bool steady_state);

QueueStats simulate(const SimSpec& spec);

// Time-averaged device power. tx_power_w is radiated during the
// transmission part (tau_b - tau_p) of every service slot; benchmark
// replaces the idle power by the active power.
EnergyStats energy_trace(const SimSpec& spec, const SystemConfig& cfg, double tx_power_w, bool benchmark = false);

// Raw event log; unstable parameters are allowed. Stops after max_events
// events or target_departures departures.
std::vector<TraceEvent> simulate_trace(const SimSpec& spec, std::size_t max_events);
void write_trace_csv(std::ostream& out, std::span<const TraceEvent> events);

// Independent replications on substreams (seed, first_replication + r),
// run on up to `threads` workers. Result order follows the replication
// index.
std::vector<QueueStats> run_replications(const SimSpec& spec, int count, unsigned threads);

// Pure reduction: replication means pooled with a Student-t interval.
QueueStats merge_replications(std::span<const QueueStats> runs);

}  // namespace aoi::sim

#include "aoi/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "aoi/errors.hpp"
#include "aoi/rng.hpp"

namespace aoi::sim {

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::Arrival: return "arrival";
    case EventKind::ServiceStart: return "service_start";
    case EventKind::Departure: return "departure";
    case EventKind::VacationStart: return "vacation_start";
    case EventKind::VacationEnd: return "vacation_end";
    case EventKind::Wake: return "wake";
  }
  return "?";
}

std::int64_t effective_warmup(const SimSpec& spec) {
  return spec.warmup_departures < 0 ? spec.target_departures / 10 : spec.warmup_departures;
}

void validate_spec(const SimSpec& spec, bool steady_state) {
  const auto& p = spec.params;
  if (!(p.lambda_rate > 0.0)) throw std::invalid_argument("arrival rate must be positive");
  if (!(p.service_s > 0.0)) throw std::invalid_argument("service time must be positive");
  if (spec.policy == Policy::MV && !(p.vacation_s >= 0.0)) {
    throw std::invalid_argument("vacation length must be nonnegative");
  }
  if (spec.policy == Policy::ST && p.threshold < 1) throw std::invalid_argument("threshold must be at least 1");
  const std::int64_t warmup = effective_warmup(spec);
  if (!(spec.target_departures > warmup && warmup >= 0)) {
    throw std::invalid_argument("target departures must exceed warmup departures");
  }
  if (spec.batch_count < 10) throw std::invalid_argument("at least 10 batches are required");
  if (spec.target_departures - warmup < spec.batch_count) {
    throw std::invalid_argument("fewer measured departures than batches");
  }
  if (steady_state) queueing::require_stable(p.lambda_rate, p.service_s);
}

namespace {

struct Packet {
  std::int64_t id;
  double arrival;
};

enum class Mode { Idle, Busy, Vacation, Sleep };

struct EnergyRates {
  bool enabled = false;
  double tau_p = 0.0;
  double tx = 0.0;
  double active = 0.0;
  double sleep = 0.0;
  double switching = 0.0;
  double ratio = 9.0;
};

struct Batch {
  double start = 0.0;
  double end = 0.0;
  std::int64_t count = 0;
  std::int64_t peak_count = 0;
  double sum_delay = 0.0;
  double sum_peak = 0.0;
  double sum_interval_age = 0.0;
  double aoi_area = 0.0;
  double interval_time = 0.0;
  double queue_area = 0.0;
  double busy_time = 0.0;
  double active_j = 0.0;
  double tx_j = 0.0;
  double idle_j = 0.0;
  double switch_j = 0.0;

  double duration() const { return end - start; }
};

class Engine {
 public:
  Engine(const SimSpec& spec, EnergyRates energy, std::vector<TraceEvent>* trace, std::size_t max_events)
      : spec_(spec),
        energy_(energy),
        trace_(trace),
        max_events_(max_events),
        rng_(SplitMix64::substream(spec.seed, spec.replication)),
        warmup_(effective_warmup(spec)),
        measured_total_(spec.target_departures - warmup_) {
    batches_.resize(static_cast<std::size_t>(spec.batch_count));
  }

  void run() {
    next_arrival_ = rng_.exponential(spec_.params.lambda_rate);
    if (warmup_ == 0) open_measurement(0.0);
    go_idle(0.0);
    while (departures_ < spec_.target_departures && !trace_full()) {
      const bool server_pending = mode_ == Mode::Busy || mode_ == Mode::Vacation;
      if (server_pending && server_event_ < next_arrival_) {
        advance(server_event_);
        if (mode_ == Mode::Busy) {
          on_departure();
        } else {
          on_vacation_end();
        }
      } else {
        advance(next_arrival_);
        on_arrival();
      }
    }
  }

  const std::vector<Batch>& batches() const { return batches_; }
  const std::vector<std::int64_t>& histogram() const { return histogram_; }
  std::int64_t measured() const { return departures_ - warmup_; }

 private:
  bool trace_full() const { return trace_ != nullptr && trace_->size() >= max_events_; }

  void emit(EventKind kind, double time) {
    if (trace_ != nullptr && trace_->size() < max_events_) {
      trace_->push_back({time, kind, static_cast<std::int64_t>(queue_.size())});
    }
  }

  Batch* current() {
    if (!measuring_ || batch_ >= batches_.size()) return nullptr;
    return &batches_[batch_];
  }

  void open_measurement(double t) {
    measuring_ = true;
    batch_ = 0;
    batches_[0].start = t;
  }

  void advance(double to) {
    const double dt = to - t_;
    if (Batch* b = current()) {
      b->queue_area += static_cast<double>(queue_.size()) * dt;
      if (mode_ == Mode::Busy) b->busy_time += dt;
    }
    t_ = to;
  }

  void credit_idle(double duration) {
    Batch* b = current();
    if (b == nullptr || !energy_.enabled) return;
    const double r = energy_.ratio;
    b->switch_j += duration / (r + 1.0) * energy_.switching;
    b->idle_j += duration * r / (r + 1.0) * energy_.sleep;
  }

  void start_service() {
    mode_ = Mode::Busy;
    server_event_ = t_ + spec_.params.service_s;
    emit(EventKind::ServiceStart, t_);
  }

  void begin_vacations(double t0) {
    const double len = spec_.params.vacation_s;
    double j = std::ceil((next_arrival_ - t0) / len);
    if (!(j >= 1.0)) j = 1.0;
    if (trace_ != nullptr) {
      for (double i = 0.0; i < j - 1.0 && !trace_full(); i += 1.0) {
        emit(EventKind::VacationStart, t0 + i * len);
        emit(EventKind::VacationEnd, t0 + (i + 1.0) * len);
      }
    }
    emit(EventKind::VacationStart, t0 + (j - 1.0) * len);
    mode_ = Mode::Vacation;
    vacation_chain_start_ = t0;
    server_event_ = t0 + j * len;
  }

  void go_idle(double t0) {
    if (spec_.policy == Policy::MV && spec_.params.vacation_s > 0.0) {
      begin_vacations(t0);
      return;
    }
    mode_ = spec_.policy == Policy::ST ? Mode::Sleep : Mode::Idle;
    idle_since_ = t0;
  }

  void on_arrival() {
    queue_.push_back({next_id_++, t_});
    emit(EventKind::Arrival, t_);
    next_arrival_ = t_ + rng_.exponential(spec_.params.lambda_rate);
    const bool wake = mode_ == Mode::Idle ||
                      (mode_ == Mode::Sleep && static_cast<int>(queue_.size()) >= spec_.params.threshold);
    if (wake) {
      credit_idle(t_ - idle_since_);
      emit(EventKind::Wake, t_);
      start_service();
    }
  }

  void on_vacation_end() {
    credit_idle(t_ - vacation_chain_start_);
    emit(EventKind::VacationEnd, t_);
    if (queue_.empty()) {
      begin_vacations(t_);
    } else {
      start_service();
    }
  }

  void on_departure() {
    const Packet pkt = queue_.front();
    if (pkt.id != next_departure_id_) throw std::logic_error("FIFO order violated");
    ++next_departure_id_;
    queue_.pop_front();
    const double delay = t_ - pkt.arrival;
    emit(EventKind::Departure, t_);

    if (Batch* b = current()) {
      ++b->count;
      b->sum_delay += delay;
      const std::size_t left = queue_.size();
      if (histogram_.size() <= left) histogram_.resize(left + 1, 0);
      ++histogram_[left];
      if (have_prev_) {
        const double peak = t_ - prev_arrival_;
        const double interval = t_ - prev_departure_;
        const double interval_age = (prev_delay_ + peak) / 2.0;
        ++b->peak_count;
        b->sum_peak += peak;
        b->sum_interval_age += interval_age;
        b->aoi_area += interval_age * interval;
        b->interval_time += interval;
      }
      if (energy_.enabled) {
        b->active_j += spec_.params.service_s * energy_.active;
        b->tx_j += (spec_.params.service_s - energy_.tau_p) * energy_.tx;
      }
    }
    prev_arrival_ = pkt.arrival;
    prev_departure_ = t_;
    prev_delay_ = delay;
    have_prev_ = true;

    ++departures_;
    if (!measuring_ && departures_ == warmup_) {
      open_measurement(t_);
    } else if (measuring_) {
      const std::int64_t done = departures_ - warmup_;
      const auto nb = static_cast<std::int64_t>(batches_.size());
      const std::int64_t boundary = (static_cast<std::int64_t>(batch_) + 1) * measured_total_ / nb;
      if (done == boundary) {
        batches_[batch_].end = t_;
        ++batch_;
        if (batch_ < batches_.size()) batches_[batch_].start = t_;
      }
    }

    if (queue_.empty()) {
      go_idle(t_);
    } else {
      start_service();
    }
  }

  const SimSpec& spec_;
  EnergyRates energy_;
  std::vector<TraceEvent>* trace_;
  std::size_t max_events_;
  SplitMix64 rng_;
  std::int64_t warmup_;
  std::int64_t measured_total_;

  double t_ = 0.0;
  double next_arrival_ = 0.0;
  double server_event_ = 0.0;
  double idle_since_ = 0.0;
  double vacation_chain_start_ = 0.0;
  Mode mode_ = Mode::Idle;
  std::deque<Packet> queue_;
  std::int64_t next_id_ = 0;
  std::int64_t next_departure_id_ = 0;
  std::int64_t departures_ = 0;

  bool have_prev_ = false;
  double prev_arrival_ = 0.0;
  double prev_departure_ = 0.0;
  double prev_delay_ = 0.0;

  bool measuring_ = false;
  std::size_t batch_ = 0;
  std::vector<Batch> batches_;
  std::vector<std::int64_t> histogram_;
};

template <typename F>
Estimate estimate(const std::vector<Batch>& batches, F&& per_batch) {
  std::vector<double> values;
  values.reserve(batches.size());
  for (const Batch& b : batches) values.push_back(per_batch(b));
  return batch_means(values);
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

double QueueStats::departure_pgf(double z) const {
  double total = 0.0;
  double acc = 0.0;
  double power = 1.0;
  for (std::int64_t c : departure_histogram) {
    acc += static_cast<double>(c) * power;
    total += static_cast<double>(c);
    power *= z;
  }
  return safe_ratio(acc, total);
}

double QueueStats::departure_mean_queue() const {
  double total = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < departure_histogram.size(); ++k) {
    acc += static_cast<double>(k) * static_cast<double>(departure_histogram[k]);
    total += static_cast<double>(departure_histogram[k]);
  }
  return safe_ratio(acc, total);
}

QueueStats simulate(const SimSpec& spec) {
  validate_spec(spec, true);
  Engine engine(spec, EnergyRates{}, nullptr, 0);
  engine.run();
  const auto& batches = engine.batches();

  QueueStats out;
  out.mean_delay_s = estimate(batches, [](const Batch& b) { return safe_ratio(b.sum_delay, b.count); });
  out.mean_peak_aoi_s = estimate(batches, [](const Batch& b) { return safe_ratio(b.sum_peak, b.peak_count); });
  out.mean_per_packet_aoi_s =
      estimate(batches, [](const Batch& b) { return safe_ratio(b.sum_interval_age, b.peak_count); });
  out.mean_queue_len = estimate(batches, [](const Batch& b) { return safe_ratio(b.queue_area, b.duration()); });
  out.rho_observed = estimate(batches, [](const Batch& b) { return safe_ratio(b.busy_time, b.duration()); });
  out.time_average_aoi_s =
      estimate(batches, [](const Batch& b) { return safe_ratio(b.aoi_area, b.interval_time); });
  out.departures = engine.measured();
  double busy = 0.0;
  for (const Batch& b : batches) {
    busy += b.busy_time;
    out.sim_time_s += b.duration();
  }
  out.busy_fraction = safe_ratio(busy, out.sim_time_s);
  out.idle_fraction = 1.0 - out.busy_fraction;
  out.departure_histogram = engine.histogram();
  return out;
}

EnergyStats energy_trace(const SimSpec& spec, const SystemConfig& cfg, double tx_power_w, bool benchmark) {
  validate_spec(spec, true);
  if (spec.params.service_s < cfg.tau_p_s) throw std::invalid_argument("service slot shorter than tau_p");
  EnergyRates rates;
  rates.enabled = true;
  rates.tau_p = cfg.tau_p_s;
  rates.tx = tx_power_w;
  rates.active = cfg.power_active_w;
  rates.sleep = benchmark ? cfg.power_active_w : cfg.power_idle_w;
  rates.switching = cfg.power_switch_w;
  rates.ratio = cfg.switch_ratio;
  Engine engine(spec, rates, nullptr, 0);
  engine.run();

  EnergyStats out;
  out.avg_power_w = estimate(engine.batches(), [](const Batch& b) {
    return safe_ratio(b.active_j + b.tx_j + b.idle_j + b.switch_j, b.duration());
  });
  for (const Batch& b : engine.batches()) {
    out.active_j += b.active_j;
    out.tx_j += b.tx_j;
    out.idle_j += b.idle_j;
    out.switch_j += b.switch_j;
    out.sim_time_s += b.duration();
  }
  return out;
}

std::vector<TraceEvent> simulate_trace(const SimSpec& spec, std::size_t max_events) {
  validate_spec(spec, false);
  std::vector<TraceEvent> events;
  events.reserve(std::min<std::size_t>(max_events, 1u << 20));
  Engine engine(spec, EnergyRates{}, &events, max_events);
  engine.run();
  return events;
}

void write_trace_csv(std::ostream& out, std::span<const TraceEvent> events) {
  out << "time_s,kind,queue_len\n";
  out.precision(17);
  for (const TraceEvent& e : events) out << e.time_s << ',' << to_string(e.kind) << ',' << e.queue_len << '\n';
}

std::vector<QueueStats> run_replications(const SimSpec& spec, int count, unsigned threads) {
  if (count < 1) throw std::invalid_argument("at least one replication is required");
  validate_spec(spec, true);
  std::vector<QueueStats> results(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < count; r = next++) {
      SimSpec local = spec;
      local.replication = spec.replication + static_cast<std::uint64_t>(r);
      results[static_cast<std::size_t>(r)] = simulate(local);
    }
  };
  const unsigned n = std::max(1u, std::min(threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

QueueStats merge_replications(std::span<const QueueStats> runs) {
  if (runs.empty()) throw std::invalid_argument("nothing to merge");
  if (runs.size() == 1) return runs.front();
  auto pool = [&](Estimate QueueStats::*field) {
    std::vector<double> means;
    for (const QueueStats& r : runs) means.push_back((r.*field).mean);
    return batch_means(means);
  };
  QueueStats out;
  out.mean_delay_s = pool(&QueueStats::mean_delay_s);
  out.mean_peak_aoi_s = pool(&QueueStats::mean_peak_aoi_s);
  out.mean_per_packet_aoi_s = pool(&QueueStats::mean_per_packet_aoi_s);
  out.mean_queue_len = pool(&QueueStats::mean_queue_len);
  out.rho_observed = pool(&QueueStats::rho_observed);
  out.time_average_aoi_s = pool(&QueueStats::time_average_aoi_s);
  double busy_time = 0.0;
  for (const QueueStats& r : runs) {
    out.departures += r.departures;
    out.sim_time_s += r.sim_time_s;
    busy_time += r.busy_fraction * r.sim_time_s;
    if (out.departure_histogram.size() < r.departure_histogram.size()) {
      out.departure_histogram.resize(r.departure_histogram.size(), 0);
    }
    for (std::size_t k = 0; k < r.departure_histogram.size(); ++k) {
      out.departure_histogram[k] += r.departure_histogram[k];
    }
  }
  out.busy_fraction = safe_ratio(busy_time, out.sim_time_s);
  out.idle_fraction = 1.0 - out.busy_fraction;
  return out;
}

}  // namespace aoi::sim

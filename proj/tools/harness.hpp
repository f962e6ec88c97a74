#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "aoi/batch_means.hpp"
#include "aoi/config.hpp"
#include "aoi/opt.hpp"
#include "aoi/types.hpp"

namespace aoi::cli {

enum class SolverChoice { Exact, CCP, Both };
enum class SweepAxis { None, PacketLen, LambdaMax, NDevices };

const char* to_string(SolverChoice s) noexcept;
const char* axis_name(SweepAxis a) noexcept;    // config field name
const char* axis_column(SweepAxis a) noexcept;  // CSV column holding the axis value
SweepAxis parse_axis(const std::string& name);
SolverChoice parse_solver(const std::string& name);

struct Combo {
  Protocol protocol = Protocol::TDMA;
  Policy policy = Policy::MV;
  bool benchmark = false;
};

// All six protocol/policy pairs, each with and without the benchmark power
// substitution.
std::vector<Combo> all_combos();

struct SolverOptions {
  int grid_k = 1000;
  int ccp_k = 50;
  double ccp_eps = 1e-6;
};

struct ExperimentPlan {
  SystemConfig base;
  SweepAxis sweep_axis = SweepAxis::None;
  std::vector<double> sweep_values;
  std::vector<Combo> combos;
  SolverChoice solver = SolverChoice::Exact;
  SolverOptions options;
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path output_dir = "out";
  unsigned threads = 0;  // 0: hardware concurrency
};

struct ResultRow {
  Protocol protocol = Protocol::TDMA;
  Policy policy = Policy::MV;
  bool benchmark = false;
  opt::Method solver = opt::Method::Exact;
  double packet_len_bits = 0.0;
  double lambda_max = 0.0;
  int n_devices = 0;
  DecisionVector x;
  double peak_aoi_s = 0.0;
  double per_packet_aoi_s = 0.0;
  double avg_power_w = 0.0;
  int iterations = 0;
  double wallclock_ms = 0.0;
  bool feasible = false;
  std::string status;
  std::string config_hash;
};

// Config for one sweep point.
SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value);

// Solves one (protocol, policy) instance on the weakest device and returns
// one row per solver. With SolverChoice::Both the CCP row notes when it
// lands more than 2% above the exact optimum.
std::vector<ResultRow> solve_instance(const SystemConfig& cfg, const Combo& combo, SolverChoice solver,
                                      const SolverOptions& options);

// Rows sorted by combo order, then sweep value, then solver.
std::vector<ResultRow> run_sweep(const ExperimentPlan& plan);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ResultRow& row);
void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);

// One SVG per metric (peak_aoi_s, per_packet_aoi_s, avg_power_w), built
// only from the CSV file. Returns the files written.
std::vector<std::filesystem::path> render_plots(const std::filesystem::path& csv_path,
                                                const std::filesystem::path& out_dir,
                                                const std::string& x_column);

void write_manifest(const std::filesystem::path& path, const SystemConfig& cfg, const std::string& command,
                    const std::vector<std::uint64_t>& seeds, const std::string& extra_json = "{}");

struct ValidationPoint {
  Policy policy = Policy::MV;
  double lambda_rate = 0.0;
  double tau_b_s = 1.0;
  double tau_s_s = 0.0;
  int threshold = 1;
};

struct ValidationRow {
  ValidationPoint point;
  std::string metric;
  double closed_form = 0.0;
  Estimate des;
  double rel_err = 0.0;
  bool pass = false;
};

std::vector<ValidationPoint> default_validation_grid(Policy policy);

// Runs the simulator at every point and compares delay, queue length, peak
// and per-packet age with the closed forms. Throws UnstableError up front
// if any point is unstable.
std::vector<ValidationRow> run_validation(const std::vector<ValidationPoint>& points, std::int64_t departures,
                                          std::uint64_t seed, double tolerance, unsigned threads);

void write_validation_csv(std::ostream& out, const std::vector<ValidationRow>& rows);

// Entry point of the command line tool; returns the process exit code.
int run_cli(int argc, char** argv);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitValidation = 3;

}  // namespace aoi::cli

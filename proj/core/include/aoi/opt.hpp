#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "aoi/config.hpp"
#include "aoi/types.hpp"

namespace aoi::opt {

using Evaluator = std::function<double(const DecisionVector&)>;

// Signed slack, normalised to be dimensionless; feasible iff slack >= 0.
struct NamedConstraint {
  std::string name;
  Evaluator slack;
};

struct Bounds {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  double tau_b_lo = 0.0;
  double tau_b_hi = 0.0;
  double param_lo = 0.0;
  double param_hi = 0.0;
  double phi_r_lo = 0.0;
  double phi_r_hi = 0.0;
};

// Transmit requirements for a given slot length.
struct TxState {
  double device_power_w = 0.0;  // largest per-device power (checked against the cap)
  double level_w = 0.0;         // per-device power (TDMA/FDMA) or total power (NOMA)
  double energy_j = 0.0;        // transmit energy per cycle charged to the station
  double efficiency = 0.0;      // bits per joule
};

class ProblemSpec {
 public:
  Protocol protocol = Protocol::TDMA;
  Policy policy = Policy::MV;
  SystemConfig cfg;
  std::size_t device_index = 0;
  double gain = 0.0;          // gain of the device the problem is posed for
  std::vector<double> gains;  // all device gains (NOMA uses every one)
  Evaluator objective;        // +inf outside the stability region
  std::vector<NamedConstraint> constraints;
  Bounds bounds;
  double tau_b_floor = 0.0;   // smallest slot meeting energy, power and EE limits

  TxState tx(double tau_b_s) const;
  double phi_r_cap() const;
  double energy_cap() const;
  double min_phi_r(double tau_b_s) const;
  // Largest slot allowed by the slot bound and stability at this rate.
  double tau_b_ceiling(double lambda) const;

  double min_slack(const DecisionVector& x) const;
  std::string binding_constraint(const DecisionVector& x) const;
  bool feasible(const DecisionVector& x, double tol = 1e-9) const;
};

// Index of the device with the weakest link; the shared schedule has to
// satisfy its constraints.
std::size_t weakest_device(const SystemConfig& cfg);

// Throws InfeasibleError naming the binding constraint when no slot length
// satisfies the limits.
ProblemSpec build_problem(Protocol protocol, Policy policy, const SystemConfig& cfg, std::size_t device_index);

struct Candidate {
  DecisionVector x;
  double objective = 0.0;
};

Candidate solve_subproblem_fixed_lambda(const ProblemSpec& p, double lambda_fixed);

enum class Method { Exact, CCP };
const char* to_string(Method m) noexcept;

struct TracePoint {
  DecisionVector x;
  double objective = 0.0;
  bool feasible = true;
};

struct SolveReport {
  DecisionVector x_star;
  double objective_s = 0.0;
  Method method = Method::Exact;
  int iterations = 0;
  std::vector<TracePoint> trace;
  bool feasible = false;
  double wallclock_ms = 0.0;
  std::string diagnostic;
  // Integer threshold for ST (better of floor and ceil); equal to x_star for MV.
  DecisionVector x_rounded;
  double objective_rounded_s = 0.0;
  // True-objective increases between successive CCP iterates above 1e-9.
  int monotonicity_violations = 0;
};

SolveReport exact_linear_search(const ProblemSpec& p, int K = 1000);

// Objective = f1 + f2 with f1 convex; gradient of f2 ordered as
// (lambda, tau_b, policy_param, phi_r).
struct DcSplit {
  Evaluator f1;
  Evaluator f2;
  std::function<std::array<double, 4>(const DecisionVector&)> grad_f2;
};

DcSplit dc_decompose(Policy policy);
DcSplit dc_decompose(const ProblemSpec& p);

DecisionVector find_feasible_point(const ProblemSpec& p);

SolveReport ccp_solve(const ProblemSpec& p, const DecisionVector& x0, int K = 50, double eps = 1e-6);

}  // namespace aoi::opt

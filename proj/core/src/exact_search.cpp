#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aoi/errors.hpp"
#include "aoi/opt.hpp"
#include "opt_detail.hpp"

namespace aoi::opt {

SolveReport exact_linear_search(const ProblemSpec& p, int K) {
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  const auto started = std::chrono::steady_clock::now();
  SolveReport r;
  r.method = Method::Exact;
  r.objective_s = std::numeric_limits<double>::infinity();

  const double lambda_lo = p.bounds.lambda_lo;
  const double lambda_hi = std::min(p.bounds.lambda_hi, (1.0 - kStabilityMargin) / p.cfg.tau_p_s);
  if (lambda_hi < lambda_lo) {
    r.diagnostic = "infeasible: rate bounds exclude every stable rate";
  } else {
    const double step = (lambda_hi - lambda_lo) / K;
    const int points = step > 0.0 ? K + 1 : 1;
    std::string last_failure;
    for (int k = 0; k < points; ++k) {
      const double lambda = (k == points - 1 && points > 1) ? lambda_hi : lambda_lo + k * step;
      ++r.iterations;
      try {
        const Candidate c = solve_subproblem_fixed_lambda(p, lambda);
        r.trace.push_back({c.x, c.objective, true});
        if (c.objective < r.objective_s) {
          r.objective_s = c.objective;
          r.x_star = c.x;
          r.feasible = true;
        }
      } catch (const InfeasibleError& e) {
        last_failure = e.constraint();
        r.trace.push_back({{lambda, 0.0, p.bounds.param_lo, 0.0}, std::numeric_limits<double>::infinity(), false});
      }
    }
    if (!r.feasible) r.diagnostic = "infeasible: no feasible grid point (binding: " + last_failure + ")";
  }
  detail::finalize_threshold(p, r);
  r.wallclock_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return r;
}

}  // namespace aoi::opt

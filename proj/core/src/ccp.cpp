#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aoi/opt.hpp"
#include "aoi/queueing.hpp"
#include "opt_detail.hpp"

namespace aoi::opt {

namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double max_abs_diff(const Vec3& a, const Vec3& b) {
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

Vec3 clip(const Vec3& v) {
  return {std::clamp(v[0], 0.0, 1.0), std::clamp(v[1], 0.0, 1.0), std::clamp(v[2], 0.0, 1.0)};
}

// Euclidean projection onto [0,1]^3 intersected with {u : a.u <= b}, a >= 0.
Vec3 project(const Vec3& v, const Vec3& a, double b) {
  Vec3 u = clip(v);
  if (dot(a, u) <= b) return u;
  auto shifted = [&](double mu) { return clip({v[0] - mu * a[0], v[1] - mu * a[1], v[2] - mu * a[2]}); };
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && dot(a, shifted(hi)) > b; ++i) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (dot(a, shifted(mid)) > b) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return shifted(hi);
}

// Affine map between (lambda, tau_b, policy_param) and the unit cube.
struct Scaling {
  Vec3 lo;
  Vec3 span;

  Vec3 to_unit(const DecisionVector& x) const {
    const Vec3 y{x.lambda_rate, x.tau_b_s, x.policy_param};
    Vec3 u{};
    for (int i = 0; i < 3; ++i) u[i] = span[i] > 0.0 ? std::clamp((y[i] - lo[i]) / span[i], 0.0, 1.0) : 0.0;
    return u;
  }

  DecisionVector to_x(const Vec3& u) const {
    return {lo[0] + u[0] * span[0], lo[1] + u[1] * span[1], lo[2] + u[2] * span[2], 0.0};
  }
};

// Convex part of the objective and its gradient in original coordinates.
double f1_value(Policy policy, const DecisionVector& x) {
  return policy == Policy::MV ? x.policy_param / 2.0 + x.tau_b_s / 2.0 + 1.0 / x.lambda_rate
                              : x.tau_b_s + 1.0 / (2.0 * x.lambda_rate);
}

Vec3 f1_gradient(Policy policy, const DecisionVector& x) {
  const double l2 = x.lambda_rate * x.lambda_rate;
  return policy == Policy::MV ? Vec3{-1.0 / l2, 0.5, 0.5} : Vec3{-1.0 / (2.0 * l2), 1.0, 0.0};
}

struct Surrogate {
  Policy policy;
  const Scaling& scale;
  Vec3 g;  // gradient of f2 at the linearisation point

  double value(const Vec3& u) const {
    const DecisionVector x = scale.to_x(u);
    return f1_value(policy, x) + g[0] * x.lambda_rate + g[1] * x.tau_b_s + g[2] * x.policy_param;
  }

  Vec3 gradient(const Vec3& u) const {
    const Vec3 d = f1_gradient(policy, scale.to_x(u));
    return {(d[0] + g[0]) * scale.span[0], (d[1] + g[1]) * scale.span[1], (d[2] + g[2]) * scale.span[2]};
  }
};

// Projected gradient with Armijo backtracking, stopped at a projected
// gradient step below tol.
Vec3 solve_surrogate(const Surrogate& s, Vec3 u, const Vec3& a, double b, double tol) {
  double t = 1.0;
  for (int it = 0; it < 20000; ++it) {
    const Vec3 grad = s.gradient(u);
    const Vec3 unit_step = project({u[0] - grad[0], u[1] - grad[1], u[2] - grad[2]}, a, b);
    if (max_abs_diff(u, unit_step) < tol) break;
    const double fu = s.value(u);
    Vec3 next = u;
    for (int bt = 0; bt < 80; ++bt) {
      next = project({u[0] - t * grad[0], u[1] - t * grad[1], u[2] - t * grad[2]}, a, b);
      const Vec3 d{next[0] - u[0], next[1] - u[1], next[2] - u[2]};
      if (s.value(next) <= fu + dot(grad, d) + dot(d, d) / (2.0 * t)) break;
      t *= 0.5;
    }
    if (max_abs_diff(u, next) == 0.0) break;
    u = next;
    t = std::min(t * 2.0, 1e6);
  }
  return u;
}

}  // namespace

SolveReport ccp_solve(const ProblemSpec& p, const DecisionVector& x0, int K, double eps) {
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  if (!p.feasible(x0)) throw std::invalid_argument("starting point is infeasible (" + p.binding_constraint(x0) + ")");
  const auto started = std::chrono::steady_clock::now();

  Scaling scale;
  scale.lo = {p.bounds.lambda_lo, p.tau_b_floor, p.bounds.param_lo};
  scale.span = {p.bounds.lambda_hi - p.bounds.lambda_lo, p.bounds.tau_b_hi - p.tau_b_floor,
                p.bounds.param_hi - p.bounds.param_lo};
  const DcSplit dc = dc_decompose(p.policy);

  SolveReport r;
  r.method = Method::CCP;
  DecisionVector xk = scale.to_x(scale.to_unit(x0));
  xk.phi_r_w = p.min_phi_r(xk.tau_b_s);
  double ak = p.objective(xk);
  r.trace.push_back({xk, ak, p.feasible(xk)});

  for (int k = 0; k < K; ++k) {
    const auto grad = dc.grad_f2(xk);
    const Surrogate s{p.policy, scale, {grad[0], grad[1], grad[2]}};
    // lambda * tau_k + tau_b * lambda_k <= 1 + lambda_k * tau_k - margin
    const Vec3 a{xk.tau_b_s * scale.span[0], xk.lambda_rate * scale.span[1], 0.0};
    const double b = 1.0 + xk.lambda_rate * xk.tau_b_s - kStabilityMargin - xk.tau_b_s * scale.lo[0] -
                     xk.lambda_rate * scale.lo[1];
    const Vec3 uk = scale.to_unit(xk);
    const Vec3 uhat = solve_surrogate(s, uk, a, b, 1e-9);

    // Move toward the surrogate minimiser while the true problem stays
    // stable and the true objective does not grow.
    Vec3 unext = uk;
    double anext = ak;
    double step = 1.0;
    for (int bt = 0; bt < 60; ++bt) {
      const Vec3 trial{uk[0] + step * (uhat[0] - uk[0]), uk[1] + step * (uhat[1] - uk[1]),
                       uk[2] + step * (uhat[2] - uk[2])};
      const DecisionVector xt = scale.to_x(trial);
      const double at = p.objective(xt);
      if (queueing::is_stable(xt.lambda_rate, xt.tau_b_s) && at <= ak) {
        unext = trial;
        anext = at;
        break;
      }
      step *= 0.5;
    }
    ++r.iterations;
    DecisionVector xnext = scale.to_x(unext);
    xnext.phi_r_w = p.min_phi_r(xnext.tau_b_s);
    if (anext > ak + 1e-9) ++r.monotonicity_violations;
    r.trace.push_back({xnext, anext, p.feasible(xnext)});
    const double change = max_abs_diff(uk, unext);
    xk = xnext;
    ak = anext;
    if (change < eps) break;
  }

  r.x_star = xk;
  r.objective_s = ak;
  r.feasible = p.feasible(xk);
  if (!r.feasible) r.diagnostic = "final iterate violates " + p.binding_constraint(xk);
  detail::finalize_threshold(p, r);
  r.wallclock_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return r;
}

}  // namespace aoi::opt

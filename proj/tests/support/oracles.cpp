#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

std::vector<double> poisson_pmf(double mean, std::size_t kmax) {
  std::vector<double> p(kmax + 1);
  p[0] = std::exp(-mean);
  for (std::size_t k = 1; k <= kmax; ++k) p[k] = p[k - 1] * mean / static_cast<double>(k);
  return p;
}

std::vector<double> departure_distribution(Idle idle, double lambda, double service, double vacation, int threshold,
                                           std::size_t states) {
  const std::vector<double> a = poisson_pmf(lambda * service, states);
  // distribution of the queue length when service restarts after idling
  std::vector<double> start(states, 0.0);
  if (idle == Idle::Plain || (idle == Idle::Threshold && threshold == 1)) {
    start[1] = 1.0;
  } else if (idle == Idle::Threshold) {
    start[static_cast<std::size_t>(threshold)] = 1.0;
  } else {
    const std::vector<double> v = poisson_pmf(lambda * vacation, states);
    const double any = -std::expm1(-lambda * vacation);
    for (std::size_t k = 1; k < states; ++k) start[k] = v[k] / any;
  }

  std::vector<double> pi(states, 0.0);
  pi[0] = 1.0;
  std::vector<double> next(states);
  for (int it = 0; it < 200000; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < states; ++i) {
      if (pi[i] == 0.0) continue;
      if (i == 0) {
        for (std::size_t s = 1; s < states; ++s) {
          if (start[s] == 0.0) continue;
          for (std::size_t k = 0; s - 1 + k < states; ++k) next[s - 1 + k] += pi[0] * start[s] * a[k];
        }
      } else {
        for (std::size_t k = 0; i - 1 + k < states; ++k) next[i - 1 + k] += pi[i] * a[k];
      }
    }
    double total = 0.0;
    for (double x : next) total += x;
    double change = 0.0;
    for (std::size_t i = 0; i < states; ++i) {
      next[i] /= total;
      change = std::max(change, std::abs(next[i] - pi[i]));
    }
    pi.swap(next);
    if (change < 1e-16) break;
  }
  return pi;
}

double pgf_of(const std::vector<double>& pmf, double z) {
  double s = 0.0;
  double zk = 1.0;
  for (double p : pmf) {
    s += p * zk;
    zk *= z;
  }
  return s;
}

double mean_of(const std::vector<double>& pmf) {
  double s = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) s += static_cast<double>(k) * pmf[k];
  return s;
}

double truncated_poisson_pgf(double a, double z, std::size_t terms) {
  double term = std::exp(-a);
  double s = 0.0;
  for (std::size_t k = 1; k <= terms; ++k) {
    term *= a * z / static_cast<double>(k);
    s += term;
  }
  return s / (1.0 - std::exp(-a));
}

double left_derivative(const std::function<double(double)>& f, double x, double h) {
  auto d = [&](double step) { return (f(x) - f(x - step)) / step; };
  // backward difference error is O(h); two Richardson levels remove O(h) and O(h^2)
  const double d1 = d(h), d2 = d(h / 2), d4 = d(h / 4);
  const double r1 = 2 * d2 - d1, r2 = 2 * d4 - d2;
  return (4 * r2 - r1) / 3;
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2 * h);
  const double d2 = (f(x + 2 * h) - f(x - 2 * h)) / (4 * h);
  return (4 * d1 - d2) / 3;
}

double trapezoid(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < n; ++i) s += f(a + h * static_cast<double>(i));
  return s * h;
}

std::vector<double> uplink_sinr(const std::vector<double>& powers, const std::vector<double>& gains) {
  std::vector<double> out(powers.size());
  for (std::size_t k = 0; k < powers.size(); ++k) {
    double interference = 0.0;
    for (std::size_t j = k + 1; j < powers.size(); ++j) interference += powers[j] * gains[j];
    out[k] = powers[k] * gains[k] / (1.0 + interference);
  }
  return out;
}

GridMin dense_grid_min(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  GridMin best{a, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    const double v = f(x);
    if (v < best.value) best = {x, v};
  }
  return best;
}

}  // namespace oracle

#include "aoi/golden_section.hpp"

#include <cmath>
#include <stdexcept>

namespace aoi {

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo <= hi)) throw std::invalid_argument("empty search interval");
  ScalarMinimum best{lo, f(lo), 1};
  auto consider = [&best](double x, double v) {
    if (v < best.value) {
      best.x = x;
      best.value = v;
    }
  };
  if (hi == lo) return best;
  consider(hi, f(hi));
  ++best.evaluations;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  best.evaluations += 2;
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++best.evaluations;
  }
  consider(c, fc);
  consider(d, fd);
  const double mid = 0.5 * (a + b);
  consider(mid, f(mid));
  ++best.evaluations;
  return best;
}

}  // namespace aoi

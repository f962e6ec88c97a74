#include "aoi/batch_means.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace aoi {

double student_t_quantile(double probability, double dof) {
  boost::math::students_t dist(dof);
  return boost::math::quantile(dist, probability);
}

Estimate batch_means(std::span<const double> values, double confidence) {
  if (values.empty()) throw std::invalid_argument("no batches");
  Estimate out;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  out.mean = sum / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  out.half_width = student_t_quantile(0.5 + confidence / 2.0, n - 1.0) * sd / std::sqrt(n);
  return out;
}

}  // namespace aoi

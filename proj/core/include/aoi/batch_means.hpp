#pragma once

#include <span>

namespace aoi {

struct Estimate {
  double mean = 0.0;
  double half_width = 0.0;

  double lower() const { return mean - half_width; }
  double upper() const { return mean + half_width; }
  bool contains(double v) const { return v >= lower() && v <= upper(); }
};

// Two-sided Student-t quantile, e.g. 0.975 for a 95% interval.
double student_t_quantile(double probability, double dof);

// Mean and confidence half-width from (approximately independent) batch or
// replication means. A single value yields a zero half-width.
Estimate batch_means(std::span<const double> values, double confidence = 0.95);

}  // namespace aoi

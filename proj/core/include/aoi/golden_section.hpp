#pragma once

#include <functional>

namespace aoi {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

// Golden-section search on [lo, hi] until the bracket is shorter than tol.
// Both endpoints are evaluated too, so monotone objectives return the
// exact boundary.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tol = 1e-10);

}  // namespace aoi

#pragma once

#include "aoi/opt.hpp"

namespace aoi::opt::detail {

// Fills x_rounded / objective_rounded_s: the better feasible of floor and
// ceil of a relaxed threshold, or a copy of x_star for MV.
void finalize_threshold(const ProblemSpec& p, SolveReport& r);

}  // namespace aoi::opt::detail

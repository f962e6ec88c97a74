#pragma once

#include <cmath>

namespace aoi::units {

inline double dbm_to_w(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double w_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// Noise spectral density conversions share the same scaling.
inline double dbm_per_hz_to_w_per_hz(double dbm_hz) { return dbm_to_w(dbm_hz); }
inline double w_per_hz_to_dbm_per_hz(double w_hz) { return w_to_dbm(w_hz); }

}  // namespace aoi::units

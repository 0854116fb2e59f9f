#pragma once

#include <cmath>
#include <stdexcept>

namespace sipmac {

namespace constants {
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kBoltzmann = 1.380649e-23;            // J/K
inline constexpr double kPlanck = 6.62607015e-34;             // J s
inline constexpr double kSpeedOfLight = 299792458.0;          // m/s
}  // namespace constants

/// 10^(x/10).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// 10 log10(x); throws std::domain_error for x <= 0.
inline double linear_to_db(double ratio) {
  if (!(ratio > 0.0)) throw std::domain_error("linear_to_db: ratio must be > 0");
  return 10.0 * std::log10(ratio);
}

/// Intensity transmission of a component with the given insertion loss.
inline double loss_to_transmission(double loss_db) { return db_to_linear(-loss_db); }

inline double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }

inline double watts_to_dbm(double watts) { return linear_to_db(watts / 1e-3); }

}  // namespace sipmac

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qkdcoex {

/// CODATA-fixed physical constants.
struct PhysicalConstants {
  static constexpr double planck_constant = 6.62607015e-34;  // J s
  static constexpr double light_speed = 2.99792458e8;        // m/s
};

namespace detail {
inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}
}  // namespace detail

/// 10^(x/10). Decibel values add, linear ratios multiply.
inline double db_to_linear(double x_db) {
  detail::require_finite(x_db, "decibel value");
  return std::pow(10.0, x_db / 10.0);
}

inline double linear_to_db(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw std::invalid_argument("linear ratio must be positive and finite");
  }
  return 10.0 * std::log10(ratio);
}

/// dBm (power relative to 1 mW) to watts.
inline double dbm_to_watt(double p_dbm) {
  detail::require_finite(p_dbm, "dBm value");
  return 1e-3 * std::pow(10.0, p_dbm / 10.0);
}

inline double watt_to_dbm(double p_w) {
  if (!(p_w > 0.0) || !std::isfinite(p_w)) {
    throw std::invalid_argument("power must be positive and finite");
  }
  return 10.0 * std::log10(p_w / 1e-3);
}

inline double wavelength_to_frequency(double lambda_nm) {
  if (!(lambda_nm > 0.0) || !std::isfinite(lambda_nm)) {
    throw std::invalid_argument("wavelength must be positive and finite");
  }
  return PhysicalConstants::light_speed / (lambda_nm * 1e-9);
}

inline double frequency_to_wavelength(double f_hz) {
  if (!(f_hz > 0.0) || !std::isfinite(f_hz)) {
    throw std::invalid_argument("frequency must be positive and finite");
  }
  return PhysicalConstants::light_speed / f_hz * 1e9;
}

/// Fiber transmittance 10^(-alpha L / 10) for attenuation in dB/km and
/// length in km.
inline double transmittance(double alpha_db_km, double length_km) {
  if (alpha_db_km < 0.0) {
    throw std::invalid_argument("attenuation must be non-negative");
  }
  if (length_km < 0.0 || !std::isfinite(length_km)) {
    throw std::invalid_argument("length must be non-negative and finite");
  }
  return std::pow(10.0, -alpha_db_km * length_km / 10.0);
}

/// Natural-log loss coefficient (1/km) for an attenuation in dB/km, i.e. the
/// xi such that transmittance = e^(-xi L). Needed wherever e^(-xi L) or
/// sinh(xi L) enters a power formula.
inline double loss_coefficient_per_km(double alpha_db_km) {
  if (alpha_db_km < 0.0) {
    throw std::invalid_argument("attenuation must be non-negative");
  }
  return alpha_db_km * std::numbers::ln10 / 10.0;
}

/// Photon energy h c / lambda in joules.
inline double photon_energy_j(double lambda_nm) {
  if (!(lambda_nm > 0.0)) {
    throw std::invalid_argument("wavelength must be positive");
  }
  return PhysicalConstants::planck_constant * PhysicalConstants::light_speed /
         (lambda_nm * 1e-9);
}

}  // namespace qkdcoex

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qkdcoex/channel_plan.hpp"
#include "qkdcoex/raman_table.hpp"
#include "qkdcoex/units.hpp"

namespace qkdcoex {

/// Attenuation per wavelength band. The split at 1450 nm separates the
/// O band (1260-1360 nm) from the C band (1530-1565 nm).
struct FiberSpec {
  double attenuation_c_db_km = 0.18;
  double attenuation_o_db_km = 0.34;

  static constexpr double kBandSplitNm = 1450.0;

  double attenuation_db_km_for(double wavelength_nm) const {
    return wavelength_nm < kBandSplitNm ? attenuation_o_db_km : attenuation_c_db_km;
  }
};

/// Classical DWDM system parameters.
struct DwdmParams {
  double receiver_sensitivity_dbm = -32.0;  // R_x
  double insertion_loss_db = 8.0;           // IL of the DWDM line system
  double isolation_db = 80.0;               // ISOL of the demultiplexer stage
  double filter_bandwidth_hz = 15e9;        // quantum-channel filter width
};

/// Quantum receiver parameters entering the photon-probability conversion.
struct DetectionParams {
  double detection_window_s = 1e-9;        // Delta t
  double detector_efficiency = 0.6;        // eta_D in (0, 1]
  double insertion_loss_detection_db = 2.0;  // maps to eta_B = 10^(-0.1 IL)
};

/// Third-order nonlinearity and dispersion figures for the FWM model.
struct FwmParams {
  double nonlinear_coefficient_per_w_km = 1.3;   // gamma
  double dispersion_ps_nm_km = 17.0;             // D_c
  double dispersion_slope_ps_nm2_km = 0.056;     // dD_c/dlambda
  double polarization_factor = 1.0;              // the peak-power formula's p
};

/// Per-path noise summary at the quantum receiver input.
struct NoiseBudget {
  double p_raman_w = 0.0;
  double p_fwm_w = 0.0;
  double p_lcxt_w = 0.0;
  double prob_raman = 0.0;
  double prob_fwm = 0.0;
  double prob_lcxt = 0.0;
  double excess_noise_snu = 0.0;

  double probability_total() const { return prob_raman + prob_fwm + prob_lcxt; }
};

/// Classical per-channel launch power needed to meet the receiver's BER
/// budget: R_x + IL, in dBm.
inline double output_power_dbm(const DwdmParams& dwdm) {
  return dwdm.receiver_sensitivity_dbm + dwdm.insertion_loss_db;
}

/// Quantum filter width converted from frequency to wavelength units at the
/// quantum carrier: dlambda = lambda^2/c * df.
inline double filter_bandwidth_nm(double quantum_wavelength_nm, double filter_bandwidth_hz) {
  const double lambda_m = quantum_wavelength_nm * 1e-9;
  return lambda_m * lambda_m / PhysicalConstants::light_speed * filter_bandwidth_hz * 1e9;
}

namespace detail {
inline double raman_cross_section_sum(const ChannelPlan& plan, const RamanTable& table) {
  double sum = 0.0;
  for (double f : plan.classical_frequencies_hz) {
    sum += table.rho(frequency_to_wavelength(f), plan.quantum_wavelength_nm);
  }
  return sum;
}
}  // namespace detail

/// Co-propagating SpRS noise power: P_out * L * sum_c rho * dlambda.
inline double raman_forward(double p_out_w, double length_km, const ChannelPlan& plan,
                            const RamanTable& table, double filter_bandwidth_nm) {
  if (length_km < 0.0) {
    throw std::invalid_argument("length must be non-negative");
  }
  return p_out_w * length_km * detail::raman_cross_section_sum(plan, table) *
         filter_bandwidth_nm;
}

/// Counter-propagating SpRS noise power: P_out * sinh(xi L)/xi * sum_c rho *
/// dlambda, with xi the natural-log loss coefficient in 1/km.
inline double raman_backward(double p_out_w, double length_km, double loss_coefficient_per_km,
                             const ChannelPlan& plan, const RamanTable& table,
                             double filter_bandwidth_nm) {
  if (length_km < 0.0) {
    throw std::invalid_argument("length must be non-negative");
  }
  if (!(loss_coefficient_per_km > 0.0)) {
    throw std::invalid_argument("loss coefficient must be positive");
  }
  const double kernel_km = std::sinh(loss_coefficient_per_km * length_km) /
                           loss_coefficient_per_km;
  return p_out_w * kernel_km * detail::raman_cross_section_sum(plan, table) *
         filter_bandwidth_nm;
}

/// Phase mismatch for the product of pumps (f_i, f_j, f_k) observed at
/// wavelength lambda, in 1/m:
/// 2 pi lambda^2/c |f_i-f_k||f_j-f_k| [D_c + dD_c/dl * lambda^2/c * (|f_i-f_k|+|f_j-f_k|)].
inline double fwm_phase_mismatch(double f_i_hz, double f_j_hz, double f_k_hz,
                                 double lambda_m, const FwmParams& fwm) {
  if (!(f_i_hz > 0.0) || !(f_j_hz > 0.0) || !(f_k_hz > 0.0)) {
    throw std::invalid_argument("pump frequencies must be positive");
  }
  const double dispersion_s_m2 = fwm.dispersion_ps_nm_km * 1e-6;
  const double slope_s_m3 = fwm.dispersion_slope_ps_nm2_km * 1e3;
  const double lambda2_over_c = lambda_m * lambda_m / PhysicalConstants::light_speed;
  const double df_ik = std::abs(f_i_hz - f_k_hz);
  const double df_jk = std::abs(f_j_hz - f_k_hz);
  return 2.0 * std::numbers::pi * lambda2_over_c * df_ik * df_jk *
         (dispersion_s_m2 + slope_s_m3 * lambda2_over_c * (df_ik + df_jk));
}

/// Phase-matching efficiency
/// eta = xi^2/(xi^2 + dB^2) [1 + 4 e^(-xi L) sin^2(dB L/2)/(1 - e^(-xi L))^2],
/// all arguments in reciprocal meters / meters. At L = 0 the bracket is taken
/// in its (finite) L -> 0 limit; the product power vanishes there anyway.
inline double fwm_efficiency(double delta_beta_per_m, double loss_coefficient_per_m,
                             double length_m) {
  if (!(loss_coefficient_per_m > 0.0)) {
    throw std::invalid_argument("loss coefficient must be positive");
  }
  if (length_m < 0.0) {
    throw std::invalid_argument("length must be non-negative");
  }
  const double xi2 = loss_coefficient_per_m * loss_coefficient_per_m;
  const double prefactor = xi2 / (xi2 + delta_beta_per_m * delta_beta_per_m);
  if (length_m == 0.0) {
    // the bracket's L -> 0 limit is 1 + dB^2/xi^2, cancelling the prefactor
    return 1.0;
  }
  const double decay = std::exp(-loss_coefficient_per_m * length_m);
  const double s = std::sin(delta_beta_per_m * length_m / 2.0);
  const double bracket = 1.0 + 4.0 * decay * s * s / ((1.0 - decay) * (1.0 - decay));
  return prefactor * bracket;
}

/// Peak power of one FWM product landing on the quantum channel:
/// eta gamma^2 D^2 p^2 e^(-xi L) (1 - e^(-xi L))^2 / (9 xi^2) P_i P_j P_k.
/// xi is evaluated at the classical (pump) band.
inline double fwm_product_power(const FwmTriple& triple, const ChannelPlan& plan,
                                const FiberSpec& fiber, const FwmParams& fwm,
                                double length_km) {
  if (length_km < 0.0) {
    throw std::invalid_argument("length must be non-negative");
  }
  if (length_km == 0.0) {
    return 0.0;
  }
  const auto& freqs = plan.classical_frequencies_hz;
  const double pump_lambda_nm = frequency_to_wavelength(freqs.at(triple.i));
  const double xi_km = loss_coefficient_per_km(fiber.attenuation_db_km_for(pump_lambda_nm));
  const double delta_beta = fwm_phase_mismatch(freqs.at(triple.i), freqs.at(triple.j),
                                               freqs.at(triple.k),
                                               plan.quantum_wavelength_nm * 1e-9, fwm);
  const double eta = fwm_efficiency(delta_beta, xi_km / 1e3, length_km * 1e3);
  const double decay = std::exp(-xi_km * length_km);
  const double gamma = fwm.nonlinear_coefficient_per_w_km;
  const double degeneracy = static_cast<double>(triple.degeneracy);
  const double pol = fwm.polarization_factor;
  const double p_ch_w = dbm_to_watt(plan.per_channel_output_power_dbm);
  return eta * gamma * gamma * degeneracy * degeneracy * pol * pol * decay *
         (1.0 - decay) * (1.0 - decay) / (9.0 * xi_km * xi_km) * p_ch_w * p_ch_w * p_ch_w;
}

/// Sum of all phase-matched FWM products that land on the quantum channel.
inline double fwm_total_power(const ChannelPlan& plan, const FiberSpec& fiber,
                              const FwmParams& fwm, double length_km,
                              double tolerance_hz = 1e9) {
  double total = 0.0;
  for (const FwmTriple& triple : enumerate_fwm_triples(plan, tolerance_hz)) {
    total += fwm_product_power(triple, plan, fiber, fwm, length_km);
  }
  return total;
}

/// Classical power leaking through finite demultiplexer isolation, in watts.
inline double lcxt_power(double p_out_dbm, double isolation_db) {
  if (isolation_db < 0.0) {
    throw std::invalid_argument("isolation must be non-negative");
  }
  return dbm_to_watt(p_out_dbm - isolation_db);
}

/// Mean number of detected noise photons per measurement window:
/// P/(h c / lambda_q) * dt * eta_D * 10^(-0.1 IL_det).
inline double photon_probability(double power_w, double quantum_wavelength_nm,
                                 const DetectionParams& det) {
  if (power_w < 0.0) {
    throw std::invalid_argument("power must be non-negative");
  }
  const double eta_detection_path = db_to_linear(-det.insertion_loss_detection_db);
  return power_w / photon_energy_j(quantum_wavelength_nm) * det.detection_window_s *
         det.detector_efficiency * eta_detection_path;
}

/// A noise field with mean detected photon number p per window adds the
/// excess variance of a thermal state, 2p shot-noise units.
inline double excess_noise_snu(double prob_total) {
  if (prob_total < 0.0) {
    throw std::invalid_argument("photon probability must be non-negative");
  }
  return 2.0 * prob_total;
}

}  // namespace qkdcoex

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "qkdcoex/errors.hpp"

namespace qkdcoex {

// The security analysis reduces the two-path relay protocol to an equivalent
// one-way Gaussian channel and evaluates the collective-attack key fraction
// r = beta I - chi on its two-mode covariance matrix
//   [[a I2, c sigma_z], [c sigma_z, b I2]].
// Spectra of near-pure states cancel catastrophically in double precision, so
// everything here computes in long double.

/// Source variances (shot-noise units, vacuum included) and reconciliation
/// efficiency.
struct ProtocolParams {
  double variance_alice_snu = 40.0;  // V_A >= 1
  double variance_bob_snu = 40.0;    // V_B >= 1
  double reconciliation_efficiency = 1.0;  // beta in [0, 1]

  void validate() const {
    if (!(variance_alice_snu >= 1.0) || !(variance_bob_snu >= 1.0)) {
      throw std::invalid_argument("modulation variances must be >= 1 SNU");
    }
    if (reconciliation_efficiency < 0.0 || reconciliation_efficiency > 1.0) {
      throw std::invalid_argument("reconciliation efficiency must lie in [0, 1]");
    }
  }
};

/// One-way reduction of the two quantum channels: transmittance T and
/// channel-referred excess noise xi' at the relay's optimal gain.
struct EquivalentChannel {
  double eta_a = 1.0;  // Alice-relay transmittance in (0, 1]
  double eta_b = 1.0;  // Bob-relay transmittance in (0, 1]
  double xi_a = 0.0;   // excess noise, Alice side (SNU)
  double xi_b = 0.0;   // excess noise, Bob side (SNU)
  long double gain_g = 0.0;
  long double t_equiv = 0.0;
  long double xi_prime = 0.0;
};

/// Two-mode covariance matrix in its (a, b, c) parametrization.
struct CovarianceState {
  long double a = 1.0;
  long double b = 1.0;
  long double c = 0.0;
};

struct RateBreakdown {
  long double mutual_information = 0.0;  // bits/use
  long double holevo_bound = 0.0;        // bits/use
  long double raw_key_fraction = 0.0;    // beta I - chi, unclamped
  long double key_fraction = 0.0;        // max(0, raw)
  std::array<long double, 3> symplectic_eigenvalues{1.0L, 1.0L, 1.0L};
};

/// Relay gain minimizing the equivalent excess noise:
/// g = sqrt(2/eta_B) sqrt((V_B-1)/(V_B+1)).
inline long double optimal_gain(long double eta_b, long double v_b) {
  if (!(eta_b > 0.0L) || eta_b > 1.0L) {
    throw std::invalid_argument("eta_b must lie in (0, 1]");
  }
  if (v_b < 1.0L) {
    throw std::invalid_argument("v_b must be >= 1 SNU");
  }
  return std::sqrt(2.0L / eta_b) * std::sqrt((v_b - 1.0L) / (v_b + 1.0L));
}

/// Equivalent excess noise at the optimal gain:
/// xi' = xi_A + (1/eta_A) [eta_B (xi_B - 2) + 2].
inline long double equivalent_excess_noise(long double eta_a, long double eta_b,
                                           long double xi_a, long double xi_b) {
  if (!(eta_a > 0.0L) || eta_a > 1.0L || !(eta_b > 0.0L) || eta_b > 1.0L) {
    throw std::invalid_argument("transmittances must lie in (0, 1]");
  }
  if (xi_a < 0.0L || xi_b < 0.0L) {
    throw std::invalid_argument("excess noises must be non-negative");
  }
  return xi_a + (eta_b * (xi_b - 2.0L) + 2.0L) / eta_a;
}

/// Equivalent excess noise at an arbitrary gain g:
/// xi' = 1 + (1/eta_A)[eta_B (Xi_B - 1) + eta_A Xi_A]
///         + (1/eta_A)(sqrt(2)/g sqrt(V_B-1) - sqrt(eta_B) sqrt(V_B+1))^2
/// with Xi_X = (1 - eta_X)/eta_X + xi_X. Reduces to the optimal-gain form
/// when g = optimal_gain(eta_B, V_B).
inline long double general_excess_noise(long double eta_a, long double eta_b,
                                        long double xi_a, long double xi_b,
                                        long double g, long double v_b) {
  if (!(g > 0.0L)) {
    throw std::invalid_argument("gain must be positive");
  }
  if (!(eta_a > 0.0L) || eta_a > 1.0L || !(eta_b > 0.0L) || eta_b > 1.0L) {
    throw std::invalid_argument("transmittances must lie in (0, 1]");
  }
  const long double big_xi_a = (1.0L - eta_a) / eta_a + xi_a;
  const long double big_xi_b = (1.0L - eta_b) / eta_b + xi_b;
  const long double mismatch = std::sqrt(2.0L) / g * std::sqrt(v_b - 1.0L) -
                               std::sqrt(eta_b) * std::sqrt(v_b + 1.0L);
  return 1.0L + (eta_b * (big_xi_b - 1.0L) + eta_a * big_xi_a) / eta_a +
         mismatch * mismatch / eta_a;
}

/// Assembles the equivalent one-way channel at the optimal gain:
/// T = eta_A g^2 / 2.
inline EquivalentChannel make_equivalent_channel(double eta_a, double eta_b, double xi_a,
                                                 double xi_b, const ProtocolParams& params) {
  params.validate();
  EquivalentChannel ch;
  ch.eta_a = eta_a;
  ch.eta_b = eta_b;
  ch.xi_a = xi_a;
  ch.xi_b = xi_b;
  ch.gain_g = optimal_gain(eta_b, params.variance_bob_snu);
  ch.t_equiv = static_cast<long double>(eta_a) * ch.gain_g * ch.gain_g / 2.0L;
  ch.xi_prime = equivalent_excess_noise(eta_a, eta_b, xi_a, xi_b);
  return ch;
}

/// von Neumann entropy kernel G(x) = (x+1) log2(x+1) - x log2 x, G(0) = 0.
inline long double g_function(long double x) {
  if (x < -1e-12L) {
    throw NumericalError("g_function argument below domain");
  }
  if (x <= 0.0L) {
    return 0.0L;
  }
  return (x + 1.0L) * std::log2(x + 1.0L) - x * std::log2(x);
}

/// Symplectic spectrum (nu1 >= nu2) of the two-mode state. The discriminant
/// Delta^2 - 4 det^2 is evaluated in the factored form
/// (a-b)^2 ((a+b)^2 - 4c^2), which is exact for a = b; nu2 comes from
/// nu1 nu2 = det to avoid the cancellation in Delta - sqrt(disc).
inline std::array<long double, 2> symplectic_eigenvalues(const CovarianceState& state) {
  const long double a = state.a;
  const long double b = state.b;
  const long double c = state.c;
  const long double delta = a * a + b * b - 2.0L * c * c;
  const long double det = a * b - c * c;
  long double disc = (a - b) * (a - b) * ((a + b) * (a + b) - 4.0L * c * c);
  if (disc < 0.0L) {
    if (disc < -1e-12L) {
      throw NumericalError("negative symplectic discriminant: state is not a valid "
                           "covariance matrix");
    }
    disc = 0.0L;
  }
  long double nu1_sq = (delta + std::sqrt(disc)) / 2.0L;
  if (nu1_sq < 0.0L) {
    if (nu1_sq < -1e-12L) {
      throw NumericalError("negative squared symplectic eigenvalue");
    }
    nu1_sq = 0.0L;
  }
  const long double nu1 = std::sqrt(nu1_sq);
  const long double nu2 = nu1 > 0.0L ? std::abs(det) / nu1 : 0.0L;
  return {nu1, nu2};
}

/// Conditional symplectic eigenvalue of mode A after the heterodyne-
/// equivalent measurement of mode B: nu3 = a - c^2/(b+1).
inline long double conditional_eigenvalue(const CovarianceState& state) {
  return state.a - state.c * state.c / (state.b + 1.0L);
}

/// Covariance matrix of the equivalent one-way channel output:
/// a = V_A, c = sqrt(T (V_A^2 - 1)), b = T (V_A - 1) + 1 + T xi'.
inline CovarianceState build_covariance(const ProtocolParams& params,
                                        const EquivalentChannel& channel) {
  params.validate();
  const long double v = params.variance_alice_snu;
  const long double t = channel.t_equiv;
  if (t < 0.0L) {
    throw std::invalid_argument("equivalent transmittance must be non-negative");
  }
  CovarianceState state;
  state.a = v;
  state.b = t * (v - 1.0L) + 1.0L + t * channel.xi_prime;
  state.c = std::sqrt(t * (v * v - 1.0L));
  const auto nus = symplectic_eigenvalues(state);
  if (nus[1] < 1.0L - 1e-9L) {
    throw NumericalError("built covariance state is unphysical (nu2 < 1): "
                         "inconsistent channel parameters");
  }
  return state;
}

/// Mutual information of the doubly-heterodyned Gaussian pair, both
/// quadratures: I = log2[(a+1)(b+1) / ((a+1)(b+1) - c^2)].
inline long double mutual_information(const CovarianceState& state) {
  const long double va = state.a + 1.0L;
  const long double vb = state.b + 1.0L;
  const long double denom = va * vb - state.c * state.c;
  if (!(denom > 0.0L)) {
    throw NumericalError("mutual information undefined: non-positive conditional variance");
  }
  return std::log2(va * vb / denom);
}

/// Holevo bound for collective attacks:
/// chi = G((nu1-1)/2) + G((nu2-1)/2) - G((nu3-1)/2).
inline long double holevo_bound(const CovarianceState& state) {
  const auto nus = symplectic_eigenvalues(state);
  const long double nu3 = conditional_eigenvalue(state);
  return g_function((nus[0] - 1.0L) / 2.0L) + g_function((nus[1] - 1.0L) / 2.0L) -
         g_function((nu3 - 1.0L) / 2.0L);
}

/// Devetak-Winter key fraction r = beta I - chi, clamped at zero with the
/// raw value preserved.
inline RateBreakdown key_fraction(const ProtocolParams& params,
                                  const EquivalentChannel& channel) {
  const CovarianceState state = build_covariance(params, channel);
  RateBreakdown out;
  const auto nus = symplectic_eigenvalues(state);
  out.symplectic_eigenvalues = {nus[0], nus[1], conditional_eigenvalue(state)};
  out.mutual_information = mutual_information(state);
  out.holevo_bound = holevo_bound(state);
  out.raw_key_fraction =
      static_cast<long double>(params.reconciliation_efficiency) * out.mutual_information -
      out.holevo_bound;
  out.key_fraction = out.raw_key_fraction > 0.0L ? out.raw_key_fraction : 0.0L;
  return out;
}

}  // namespace qkdcoex

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdcoex/units.hpp"

namespace qkdcoex {

/// DWDM channel allocation: one quantum channel plus the classical comb.
struct ChannelPlan {
  double quantum_wavelength_nm = 0.0;
  std::vector<double> classical_frequencies_hz;  // ascending
  double per_channel_output_power_dbm = -24.0;

  std::size_t channel_count() const { return classical_frequencies_hz.size(); }

  double quantum_frequency_hz() const {
    return wavelength_to_frequency(quantum_wavelength_nm);
  }

  void validate() const {
    if (!(quantum_wavelength_nm > 0.0)) {
      throw std::invalid_argument("quantum wavelength must be positive");
    }
    const double fq = quantum_frequency_hz();
    std::set<double> seen;
    for (double f : classical_frequencies_hz) {
      if (!(f > 0.0)) {
        throw std::invalid_argument("classical frequencies must be positive");
      }
      if (!seen.insert(f).second) {
        throw std::invalid_argument("classical frequencies must be distinct");
      }
      if (std::abs(f - fq) < 1.0) {  // < 1 Hz: physically the same carrier
        throw std::invalid_argument(
            "quantum channel frequency coincides with a classical channel");
      }
    }
  }
};

/// A classical-channel triple whose mixing product f_i + f_j - f_k lands on
/// the quantum channel. Canonical form i <= j; the degeneracy factor carries
/// the combinatorial weight (3 for i = j, 6 otherwise).
struct FwmTriple {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  int degeneracy = 6;

  bool operator==(const FwmTriple&) const = default;
};

inline constexpr double kItuAnchorHz = 193.1e12;
inline constexpr double kItuSpacingHz = 100e9;

namespace detail {

/// N contiguous channels on the 100 GHz ITU grid anchored at 193.1 THz,
/// ascending, skipping the slot that holds the quantum channel.
inline std::vector<double> default_grid(std::size_t n_channels, double fq_hz) {
  std::vector<double> freqs;
  freqs.reserve(n_channels);
  for (int slot = 0; freqs.size() < n_channels; ++slot) {
    const double f = kItuAnchorHz + slot * kItuSpacingHz;
    if (std::abs(f - fq_hz) < kItuSpacingHz / 2.0) {
      continue;
    }
    freqs.push_back(f);
  }
  return freqs;
}

}  // namespace detail

/// The four studied configurations: (10 ch, 1536.61 nm), (10 ch, 1310 nm),
/// (40 ch, 1537.40 nm), (40 ch, 1310 nm).
inline ChannelPlan build_configuration(int id,
                                       double per_channel_output_power_dbm = -24.0) {
  std::size_t n_channels = 0;
  double lambda_q_nm = 0.0;
  switch (id) {
    case 1: n_channels = 10; lambda_q_nm = 1536.61; break;
    case 2: n_channels = 10; lambda_q_nm = 1310.0; break;
    case 3: n_channels = 40; lambda_q_nm = 1537.40; break;
    case 4: n_channels = 40; lambda_q_nm = 1310.0; break;
    default:
      throw std::invalid_argument("unknown configuration id " +
                                  std::to_string(id) + " (expected 1..4)");
  }
  ChannelPlan plan;
  plan.quantum_wavelength_nm = lambda_q_nm;
  plan.per_channel_output_power_dbm = per_channel_output_power_dbm;
  plan.classical_frequencies_hz =
      detail::default_grid(n_channels, wavelength_to_frequency(lambda_q_nm));
  plan.validate();
  return plan;
}

/// All canonical triples (i <= j, any k) with |f_i + f_j - f_k - f_q| within
/// the matching tolerance, ordered lexicographically by (i, j, k).
inline std::vector<FwmTriple> enumerate_fwm_triples(const ChannelPlan& plan,
                                                    double tolerance_hz = 1e9) {
  if (tolerance_hz < 0.0) {
    throw std::invalid_argument("matching tolerance must be non-negative");
  }
  plan.validate();
  const auto& f = plan.classical_frequencies_hz;
  const double fq = plan.quantum_frequency_hz();
  std::vector<FwmTriple> triples;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i; j < f.size(); ++j) {
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (std::abs(f[i] + f[j] - f[k] - fq) <= tolerance_hz) {
          triples.push_back({i, j, k, i == j ? 3 : 6});
        }
      }
    }
  }
  return triples;
}

}  // namespace qkdcoex

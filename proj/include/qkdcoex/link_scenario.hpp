#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qkdcoex/channel_plan.hpp"
#include "qkdcoex/noise_budget.hpp"
#include "qkdcoex/raman_table.hpp"
#include "qkdcoex/security_core.hpp"
#include "qkdcoex/units.hpp"

namespace qkdcoex {

enum class Path { alice, bob };

/// Full description of one relay link: segment lengths, channel plan, fiber
/// and receiver parameters, and the per-path noise toggles. The classical
/// comb traverses both segments end to end; it co-propagates with the
/// quantum signal on Alice's segment (forward SpRS) and counter-propagates
/// on Bob's (backward SpRS).
struct LinkScenario {
  double length_alice_km = 0.0;
  double length_bob_km = 0.0;
  double asymmetry_ratio = 1.0;  // L_a / L_b

  ChannelPlan plan;
  FiberSpec fiber;
  DwdmParams dwdm;
  DetectionParams detection;
  FwmParams fwm;
  ProtocolParams protocol;

  double baseline_excess_noise_snu = 0.01;  // device noise floor per side
  bool lcxt_alice = true;
  bool lcxt_bob = true;
  bool fwm_alice = true;  // classical and quantum co-propagate here
  bool fwm_bob = false;   // counter-propagating FWM off by default
  double fwm_tolerance_hz = 1e9;

  /// Same scenario re-split to a new total length at the stored ratio.
  LinkScenario at_total(double total_km) const;
};

/// Splits a total fiber length by the asymmetry ratio R = L_a / L_b:
/// L_a = total R/(1+R), L_b = total/(1+R).
inline std::pair<double, double> split_lengths(double total_km, double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw std::invalid_argument("asymmetry ratio must be positive and finite");
  }
  if (total_km < 0.0) {
    throw std::invalid_argument("total length must be non-negative");
  }
  return {total_km * ratio / (1.0 + ratio), total_km / (1.0 + ratio)};
}

inline LinkScenario LinkScenario::at_total(double total_km) const {
  LinkScenario out = *this;
  const auto [la, lb] = split_lengths(total_km, asymmetry_ratio);
  out.length_alice_km = la;
  out.length_bob_km = lb;
  return out;
}

/// Noise budget of one path at the quantum receiver input. Forward SpRS on
/// Alice's path, backward on Bob's; FWM and LCXT follow the per-path
/// toggles. The SpRS/FWM generation kernels use the classical-band loss
/// coefficient (the pumps live there).
inline NoiseBudget path_noise(const LinkScenario& sc, const RamanTable& table, Path path) {
  const double length_km = path == Path::alice ? sc.length_alice_km : sc.length_bob_km;
  const double p_out_w = dbm_to_watt(output_power_dbm(sc.dwdm));
  const double dlam_nm =
      filter_bandwidth_nm(sc.plan.quantum_wavelength_nm, sc.dwdm.filter_bandwidth_hz);

  NoiseBudget budget;
  if (path == Path::alice) {
    budget.p_raman_w = raman_forward(p_out_w, length_km, sc.plan, table, dlam_nm);
  } else {
    const double classical_lambda_nm =
        frequency_to_wavelength(sc.plan.classical_frequencies_hz.front());
    const double xi_km =
        loss_coefficient_per_km(sc.fiber.attenuation_db_km_for(classical_lambda_nm));
    budget.p_raman_w = raman_backward(p_out_w, length_km, xi_km, sc.plan, table, dlam_nm);
  }
  const bool fwm_on = path == Path::alice ? sc.fwm_alice : sc.fwm_bob;
  if (fwm_on) {
    budget.p_fwm_w =
        fwm_total_power(sc.plan, sc.fiber, sc.fwm, length_km, sc.fwm_tolerance_hz);
  }
  const bool lcxt_on = path == Path::alice ? sc.lcxt_alice : sc.lcxt_bob;
  if (lcxt_on) {
    budget.p_lcxt_w = lcxt_power(output_power_dbm(sc.dwdm), sc.dwdm.isolation_db);
  }

  budget.prob_raman = photon_probability(budget.p_raman_w, sc.plan.quantum_wavelength_nm,
                                         sc.detection);
  budget.prob_fwm =
      photon_probability(budget.p_fwm_w, sc.plan.quantum_wavelength_nm, sc.detection);
  budget.prob_lcxt =
      photon_probability(budget.p_lcxt_w, sc.plan.quantum_wavelength_nm, sc.detection);
  budget.excess_noise_snu =
      sc.baseline_excess_noise_snu + excess_noise_snu(budget.probability_total());
  return budget;
}

/// One fully evaluated link: per-side noises, the equivalent channel, and
/// the rate breakdown.
struct ScenarioEvaluation {
  double eta_a = 1.0;
  double eta_b = 1.0;
  NoiseBudget noise_alice;
  NoiseBudget noise_bob;
  EquivalentChannel channel;
  RateBreakdown rate;
};

inline ScenarioEvaluation evaluate(const LinkScenario& sc, const RamanTable& table) {
  const double alpha_q =
      sc.fiber.attenuation_db_km_for(sc.plan.quantum_wavelength_nm);
  ScenarioEvaluation ev;
  ev.eta_a = transmittance(alpha_q, sc.length_alice_km);
  ev.eta_b = transmittance(alpha_q, sc.length_bob_km);
  ev.noise_alice = path_noise(sc, table, Path::alice);
  ev.noise_bob = path_noise(sc, table, Path::bob);
  ev.channel = make_equivalent_channel(ev.eta_a, ev.eta_b, ev.noise_alice.excess_noise_snu,
                                       ev.noise_bob.excess_noise_snu, sc.protocol);
  ev.rate = key_fraction(sc.protocol, ev.channel);
  return ev;
}

inline RateBreakdown rate_at(const LinkScenario& sc, const RamanTable& table) {
  return evaluate(sc, table).rate;
}

struct SweepRow {
  double total_length_km = 0.0;
  double length_alice_km = 0.0;
  double length_bob_km = 0.0;
  double xi_a_snu = 0.0;
  double xi_b_snu = 0.0;
  double xi_prime_snu = 0.0;
  double mutual_information_bits = 0.0;
  double holevo_bits = 0.0;
  double key_fraction_bits = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::optional<double> max_distance_km;
};

namespace detail {
inline double raw_rate_at_total(const LinkScenario& tmpl, const RamanTable& table,
                                double total_km) {
  return static_cast<double>(rate_at(tmpl.at_total(total_km), table).raw_key_fraction);
}
}  // namespace detail

/// Largest total length with a positive key fraction: coarse scan of the raw
/// (unclamped) rate, then bisection of the last sign change down to the
/// requested resolution. Returns the upper bound itself when the rate never
/// drops, and nothing when it is non-positive already at zero length.
inline std::optional<double> max_distance(const LinkScenario& tmpl, const RamanTable& table,
                                          double upper_bound_km, double resolution_km = 0.01) {
  if (!(upper_bound_km > 0.0) || !(resolution_km > 0.0)) {
    throw std::invalid_argument("upper bound and resolution must be positive");
  }
  const auto raw = [&](double total) {
    return detail::raw_rate_at_total(tmpl, table, total);
  };
  if (!(raw(0.0) > 0.0)) {
    return std::nullopt;
  }
  const int coarse_steps =
      std::min(400, std::max(1, static_cast<int>(std::ceil(upper_bound_km / resolution_km))));
  int last_positive = -1;
  for (int n = 0; n <= coarse_steps; ++n) {
    const double total = upper_bound_km * n / coarse_steps;
    if (raw(total) > 0.0) {
      last_positive = n;
    }
  }
  if (last_positive < 0) {
    return std::nullopt;  // positive at 0 but not on the grid start: degenerate
  }
  if (last_positive == coarse_steps) {
    return upper_bound_km;
  }
  double lo = upper_bound_km * last_positive / coarse_steps;
  double hi = upper_bound_km * (last_positive + 1) / coarse_steps;
  while (hi - lo > resolution_km) {
    const double mid = 0.5 * (lo + hi);
    if (raw(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Rate-versus-distance sweep over a strictly increasing grid of total
/// lengths. Rows come back in grid order regardless of evaluation order.
inline SweepResult sweep(const LinkScenario& tmpl, const RamanTable& table,
                         std::span<const double> total_lengths_km,
                         double max_distance_resolution_km = 0.01) {
  for (std::size_t n = 1; n < total_lengths_km.size(); ++n) {
    if (!(total_lengths_km[n] > total_lengths_km[n - 1])) {
      throw std::invalid_argument("sweep grid must be strictly increasing");
    }
  }
  if (!total_lengths_km.empty() && total_lengths_km.front() < 0.0) {
    throw std::invalid_argument("sweep grid must be non-negative");
  }
  SweepResult result;
  result.rows.reserve(total_lengths_km.size());
  for (double total : total_lengths_km) {
    const LinkScenario sc = tmpl.at_total(total);
    const ScenarioEvaluation ev = evaluate(sc, table);
    SweepRow row;
    row.total_length_km = total;
    row.length_alice_km = sc.length_alice_km;
    row.length_bob_km = sc.length_bob_km;
    row.xi_a_snu = ev.noise_alice.excess_noise_snu;
    row.xi_b_snu = ev.noise_bob.excess_noise_snu;
    row.xi_prime_snu = static_cast<double>(ev.channel.xi_prime);
    row.mutual_information_bits = static_cast<double>(ev.rate.mutual_information);
    row.holevo_bits = static_cast<double>(ev.rate.holevo_bound);
    row.key_fraction_bits = static_cast<double>(ev.rate.key_fraction);
    result.rows.push_back(row);
  }
  if (!total_lengths_km.empty() && total_lengths_km.back() > 0.0) {
    result.max_distance_km =
        max_distance(tmpl, table, total_lengths_km.back(), max_distance_resolution_km);
  }
  return result;
}

}  // namespace qkdcoex

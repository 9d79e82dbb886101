#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "qkdcoex/channel_plan.hpp"
#include "qkdcoex/units.hpp"

using namespace qkdcoex;
using Catch::Matchers::WithinRel;

namespace {

// Independent exhaustive scan: all ordered triples, canonicalized afterward.
std::set<std::tuple<std::size_t, std::size_t, std::size_t, int>> brute_force_triples(
    const ChannelPlan& plan, double tolerance_hz) {
  const auto& f = plan.classical_frequencies_hz;
  const double fq = plan.quantum_frequency_hz();
  std::set<std::tuple<std::size_t, std::size_t, std::size_t, int>> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (std::abs(f[i] + f[j] - f[k] - fq) <= tolerance_hz) {
          const std::size_t lo = std::min(i, j);
          const std::size_t hi = std::max(i, j);
          out.emplace(lo, hi, k, lo == hi ? 3 : 6);
        }
      }
    }
  }
  return out;
}

std::set<std::tuple<std::size_t, std::size_t, std::size_t, int>> as_set(
    const std::vector<FwmTriple>& triples) {
  std::set<std::tuple<std::size_t, std::size_t, std::size_t, int>> out;
  for (const auto& t : triples) {
    out.emplace(t.i, t.j, t.k, t.degeneracy);
  }
  return out;
}

}  // namespace

TEST_CASE("build_configuration matches the studied table") {
  const ChannelPlan c1 = build_configuration(1);
  REQUIRE(c1.channel_count() == 10);
  REQUIRE(c1.quantum_wavelength_nm == 1536.61);

  const ChannelPlan c2 = build_configuration(2);
  REQUIRE(c2.channel_count() == 10);
  REQUIRE(c2.quantum_wavelength_nm == 1310.0);

  const ChannelPlan c3 = build_configuration(3);
  REQUIRE(c3.channel_count() == 40);
  REQUIRE(c3.quantum_wavelength_nm == 1537.40);

  const ChannelPlan c4 = build_configuration(4);
  REQUIRE(c4.channel_count() == 40);
  REQUIRE(c4.quantum_wavelength_nm == 1310.0);

  REQUIRE_THROWS_AS(build_configuration(0), std::invalid_argument);
  REQUIRE_THROWS_AS(build_configuration(5), std::invalid_argument);
}

TEST_CASE("default plans sit on the 100 GHz grid anchored at 193.1 THz") {
  for (int id : {1, 2, 4}) {
    const ChannelPlan plan = build_configuration(id);
    for (std::size_t n = 0; n < plan.channel_count(); ++n) {
      REQUIRE_THAT(plan.classical_frequencies_hz[n],
                   WithinRel(193.1e12 + n * 100e9, 1e-12));
    }
  }
  // config 3: the quantum channel occupies the 195.0 THz slot, which is
  // skipped, so the comb runs 193.1..194.9, 195.1..197.1 THz
  const ChannelPlan c3 = build_configuration(3);
  REQUIRE(c3.channel_count() == 40);
  std::vector<double> expected;
  for (int slot = 0; slot <= 40; ++slot) {
    if (slot == 19) continue;
    expected.push_back(193.1e12 + slot * 100e9);
  }
  for (std::size_t n = 0; n < 40; ++n) {
    REQUIRE_THAT(c3.classical_frequencies_hz[n], WithinRel(expected[n], 1e-12));
  }
}

TEST_CASE("quantum frequency is absent from every default classical set") {
  for (int id : {1, 2, 3, 4}) {
    const ChannelPlan plan = build_configuration(id);
    const double fq = plan.quantum_frequency_hz();
    for (double f : plan.classical_frequencies_hz) {
      REQUIRE(std::abs(f - fq) > 10e9);  // at least a grid-scale separation
    }
    REQUIRE_NOTHROW(plan.validate());
  }
}

TEST_CASE("plan validation rejects broken plans") {
  ChannelPlan plan;
  plan.quantum_wavelength_nm = 1536.61;
  plan.classical_frequencies_hz = {193.1e12, 193.1e12};
  REQUIRE_THROWS_AS(plan.validate(), std::invalid_argument);

  plan.classical_frequencies_hz = {193.1e12, -1.0};
  REQUIRE_THROWS_AS(plan.validate(), std::invalid_argument);

  plan.classical_frequencies_hz = {plan.quantum_frequency_hz()};
  REQUIRE_THROWS_AS(plan.validate(), std::invalid_argument);

  plan.quantum_wavelength_nm = 0.0;
  REQUIRE_THROWS_AS(plan.validate(), std::invalid_argument);
}

TEST_CASE("three equally spaced channels with f_q = f0 + 3d") {
  // brute force finds two products: f2+f3-f1 and the degenerate f3+f3-f2
  ChannelPlan plan;
  const double f0 = 193.1e12;
  const double d = 100e9;
  plan.classical_frequencies_hz = {f0, f0 + d, f0 + 2 * d};
  plan.quantum_wavelength_nm = frequency_to_wavelength(f0 + 3 * d);

  const auto triples = enumerate_fwm_triples(plan, 1e9);
  REQUIRE(as_set(triples) == brute_force_triples(plan, 1e9));
  REQUIRE(triples.size() == 2);
  REQUIRE(triples[0] == FwmTriple{1, 2, 0, 6});
  REQUIRE(triples[1] == FwmTriple{2, 2, 1, 3});
}

TEST_CASE("O-band quantum channel has no phase-matched products") {
  for (int id : {2, 4}) {
    const ChannelPlan plan = build_configuration(id);
    REQUIRE(enumerate_fwm_triples(plan, 1e9).empty());
    REQUIRE(brute_force_triples(plan, 1e9).empty());
  }
}

TEST_CASE("a single classical channel yields no products") {
  ChannelPlan plan;
  plan.classical_frequencies_hz = {193.1e12};
  plan.quantum_wavelength_nm = 1536.61;
  REQUIRE(enumerate_fwm_triples(plan, 1e9).empty());
}

TEST_CASE("enumeration equals the exhaustive scan for the studied plans") {
  for (int id : {1, 2, 3, 4}) {
    const ChannelPlan plan = build_configuration(id);
    REQUIRE(as_set(enumerate_fwm_triples(plan, 1e9)) == brute_force_triples(plan, 1e9));
  }
  // config 3 is the only one with in-band products
  REQUIRE_FALSE(enumerate_fwm_triples(build_configuration(3), 1e9).empty());
}

TEST_CASE("enumeration equals the exhaustive scan on random plans") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> n_channels(2, 40);
  std::uniform_int_distribution<int> slot(0, 60);
  for (int trial = 0; trial < 30; ++trial) {
    std::set<int> slots;
    const int want = n_channels(rng);
    while (static_cast<int>(slots.size()) < want) {
      slots.insert(slot(rng));
    }
    ChannelPlan plan;
    for (int s : slots) {
      plan.classical_frequencies_hz.push_back(191.0e12 + s * 100e9);
    }
    int quantum_slot = slot(rng);
    while (slots.count(quantum_slot) != 0) {
      quantum_slot = slot(rng);
    }
    plan.quantum_wavelength_nm = frequency_to_wavelength(191.0e12 + quantum_slot * 100e9);

    const auto triples = enumerate_fwm_triples(plan, 1e9);
    REQUIRE(as_set(triples) == brute_force_triples(plan, 1e9));
    const double fq = plan.quantum_frequency_hz();
    for (const auto& t : triples) {
      REQUIRE(t.i <= t.j);
      REQUIRE(t.degeneracy == (t.i == t.j ? 3 : 6));
      REQUIRE(std::abs(plan.classical_frequencies_hz[t.i] +
                       plan.classical_frequencies_hz[t.j] -
                       plan.classical_frequencies_hz[t.k] - fq) <= 1e9);
    }
    // deterministic lexicographic order
    REQUIRE(std::is_sorted(triples.begin(), triples.end(), [](const auto& x, const auto& y) {
      return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
    }));
  }
}

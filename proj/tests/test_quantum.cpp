#include <array>
#include <complex>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rnl/quantum.hpp"
#include "rnl/sampling.hpp"

using namespace rnl;
using Catch::Matchers::WithinAbs;

namespace {

// Brute-force oracle: explicit 4x4 tensor-product matrix in long double,
// applied to the amplitude 4-vector.
JointDistribution oracle_entangled(const TwoPhotonState& state, double alpha, double beta) {
  using C = std::complex<long double>;
  const long double c1 = std::cos(static_cast<long double>(alpha));
  const long double s1 = std::sin(static_cast<long double>(alpha));
  const long double c2 = std::cos(static_cast<long double>(beta));
  const long double s2 = std::sin(static_cast<long double>(beta));
  const long double r1[2][2] = {{c1, -s1}, {s1, c1}};
  const long double r2[2][2] = {{c2, -s2}, {s2, c2}};
  const C a[4] = {C(state.hh), C(state.hv), C(state.vh), C(state.vv)};
  C b[4];
  for (int big_x = 0; big_x < 2; ++big_x) {
    for (int big_y = 0; big_y < 2; ++big_y) {
      C acc{0.0L, 0.0L};
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          acc += r1[big_x][x] * r2[big_y][y] * a[2 * x + y];
        }
      }
      b[2 * big_x + big_y] = acc;
    }
  }
  auto p = [&](int i) { return static_cast<double>(std::norm(b[i])); };
  return {p(0), p(1), p(2), p(3)};
}

}  // namespace

TEST_CASE("bell state", "[quantum]") {
  const auto state = bell_state();
  REQUIRE_THAT(state.hh.real(), WithinAbs(1.0 / std::numbers::sqrt2, 1e-16));
  REQUIRE_THAT(state.vv.real(), WithinAbs(-1.0 / std::numbers::sqrt2, 1e-16));
  REQUIRE(state.hv == Complex{0.0, 0.0});
  REQUIRE(state.vh == Complex{0.0, 0.0});
  REQUIRE_THAT(state.norm_squared(), WithinAbs(1.0, 1e-15));
  REQUIRE(is_two_class(state));
  REQUIRE(is_equal_weight_two_class(state));
  REQUIRE(is_bell_like(state));

  const auto joint = entangled_joint(state, {0.0, 0.0});
  REQUIRE_THAT(joint.pp, WithinAbs(0.5, 1e-15));
  REQUIRE_THAT(joint.mm, WithinAbs(0.5, 1e-15));
  REQUIRE(joint.pm == 0.0);
  REQUIRE(joint.mp == 0.0);
}

TEST_CASE("two_class_state", "[quantum]") {
  const auto b = two_class_state({1.0, 0.0}, {-1.0, 0.0});
  REQUIRE_THAT(std::abs(b.hh - bell_state().hh), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(std::abs(b.vv - bell_state().vv), WithinAbs(0.0, 1e-15));

  const auto product = two_class_state({1.0, 0.0}, {0.0, 0.0});
  REQUIRE(product.hh == Complex{1.0, 0.0});
  REQUIRE(product.vv == Complex{0.0, 0.0});
  REQUIRE_FALSE(is_equal_weight_two_class(product));

  const auto skewed = two_class_state({std::sqrt(0.7), 0.0}, {-std::sqrt(0.3), 0.0});
  REQUIRE_THAT(skewed.norm_squared(), WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(std::norm(skewed.hh), WithinAbs(0.7, 1e-15));

  REQUIRE_THROWS_AS(two_class_state({0.0, 0.0}, {0.0, 0.0}), DomainError);
}

TEST_CASE("analyzer settings convert degrees and reduce mod pi", "[quantum]") {
  const auto s = AnalyzerSettings::from_degrees(45.0, -45.0);
  REQUIRE_THAT(s.alpha, WithinAbs(std::numbers::pi / 4.0, 1e-15));
  REQUIRE_THAT(s.beta, WithinAbs(-std::numbers::pi / 4.0, 1e-15));
  const auto r = s.reduced_mod_pi();
  REQUIRE(r.alpha >= 0.0);
  REQUIRE(r.alpha < std::numbers::pi);
  REQUIRE(r.beta >= 0.0);
  REQUIRE(r.beta < std::numbers::pi);
  REQUIRE_THAT(r.beta, WithinAbs(3.0 * std::numbers::pi / 4.0, 1e-15));
}

TEST_CASE("entangled joint at the quoted settings", "[quantum]") {
  const auto state = bell_state();

  SECTION("aligned analyzers correlate perfectly") {
    REQUIRE_THAT(correlation(entangled_joint(state, {0.0, 0.0})), WithinAbs(1.0, 1e-15));
  }

  SECTION("alpha = beta = 22.5 degrees gives E = 0") {
    const auto joint = entangled_joint(state, AnalyzerSettings::from_degrees(22.5, 22.5));
    REQUIRE_THAT(correlation(joint), WithinAbs(0.0, 1e-15));
  }

  SECTION("alpha = 22.5, beta = 0: frozen hand-computed entries") {
    const auto joint = entangled_joint(state, AnalyzerSettings::from_degrees(22.5, 0.0));
    REQUIRE_THAT(joint.pp, WithinAbs(0.4267766952966369, 1e-15));
    REQUIRE_THAT(joint.mm, WithinAbs(0.4267766952966369, 1e-15));
    REQUIRE_THAT(joint.pm, WithinAbs(0.07322330470336311, 1e-15));
    REQUIRE_THAT(joint.mp, WithinAbs(0.07322330470336311, 1e-15));
    REQUIRE_THAT(correlation(joint), WithinAbs(std::numbers::sqrt2 / 2.0, 1e-15));
  }

  SECTION("rejects an unnormalized state") {
    TwoPhotonState bad = state;
    bad.hh *= 2.0;
    REQUIRE_THROWS_AS(entangled_joint(bad, {0.0, 0.0}), ValidationError);
  }
}

TEST_CASE("entangled joint matches the brute-force amplitude oracle", "[quantum]") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    // general normalized state, cross terms included
    Complex amps[4];
    double norm = 0.0;
    for (auto& a : amps) {
      a = Complex{rng.next_unit() - 0.5, rng.next_unit() - 0.5};
      norm += std::norm(a);
    }
    const double r = std::sqrt(norm);
    const TwoPhotonState state{amps[0] / r, amps[1] / r, amps[2] / r, amps[3] / r};
    const double alpha = (rng.next_unit() - 0.5) * 7.0;
    const double beta = (rng.next_unit() - 0.5) * 7.0;

    const auto fast = entangled_joint(state, {alpha, beta});
    const auto slow = oracle_entangled(state, alpha, beta);
    for (Outcome sigma : kOutcomes) {
      for (Outcome omega : kOutcomes) {
        REQUIRE_THAT(fast.at(sigma, omega), WithinAbs(slow.at(sigma, omega), 1e-12));
      }
    }
  }
}

TEST_CASE("mixture joint at the quoted settings", "[quantum]") {
  const auto state = bell_state();

  SECTION("aligned analyzers distinguish nothing") {
    const auto joint = mixture_joint(state, {0.0, 0.0});
    REQUIRE_THAT(joint.pp, WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(joint.mm, WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(correlation(joint), WithinAbs(1.0, 1e-15));
  }

  SECTION("45/-45 degrees flattens to the uniform table") {
    const auto joint = mixture_joint(state, AnalyzerSettings::from_degrees(45.0, -45.0));
    for (Outcome sigma : kOutcomes) {
      for (Outcome omega : kOutcomes) {
        REQUIRE_THAT(joint.at(sigma, omega), WithinAbs(0.25, 1e-15));
      }
    }
    REQUIRE_THAT(correlation(joint), WithinAbs(0.0, 1e-15));
  }

  SECTION("22.5/22.5 degrees gives the product cos45 * cos45") {
    const auto joint = mixture_joint(state, AnalyzerSettings::from_degrees(22.5, 22.5));
    REQUIRE_THAT(correlation(joint), WithinAbs(0.5, 1e-15));
  }

  SECTION("cross terms are rejected") {
    // (|HV> + |VH>)/sqrt(2)
    const double r = 1.0 / std::numbers::sqrt2;
    const TwoPhotonState psi{{0.0, 0.0}, {r, 0.0}, {r, 0.0}, {0.0, 0.0}};
    REQUIRE_THROWS_AS(mixture_joint(psi, {0.0, 0.0}), UnsupportedError);
  }
}

TEST_CASE("closed forms hold across the angle grid", "[quantum]") {
  const auto state = bell_state();
  constexpr int n = 24;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const AnalyzerSettings settings{i * std::numbers::pi / n, k * std::numbers::pi / n};
      const auto entangled = entangled_joint(state, settings);
      const auto mixed = mixture_joint(state, settings);

      REQUIRE_THAT(entangled.sum(), WithinAbs(1.0, 1e-12));
      REQUIRE_THAT(mixed.sum(), WithinAbs(1.0, 1e-12));
      for (Outcome sigma : kOutcomes) {
        for (Outcome omega : kOutcomes) {
          REQUIRE(entangled.at(sigma, omega) >= 0.0);
          REQUIRE(mixed.at(sigma, omega) >= 0.0);
        }
      }

      const double two_ab = 2.0 * (settings.alpha + settings.beta);
      REQUIRE_THAT(correlation(entangled), WithinAbs(std::cos(two_ab), 1e-12));
      REQUIRE_THAT(correlation(mixed),
                   WithinAbs(std::cos(2.0 * settings.alpha) * std::cos(2.0 * settings.beta),
                             1e-12));

      // maximally entangled: every single-party marginal is 1/2
      for (Party party : {Party::One, Party::Two}) {
        const auto m = marginal(entangled, party);
        REQUIRE_THAT(m.plus, WithinAbs(0.5, 1e-12));
        const auto mb = marginal(mixed, party);
        REQUIRE_THAT(mb.plus, WithinAbs(0.5, 1e-12));
      }
    }
  }
}

TEST_CASE("global phase and pi-periodicity leave both joints unchanged", "[quantum]") {
  SplitMix64 rng(103);
  for (int trial = 0; trial < 50; ++trial) {
    const auto state = test::random_two_class_state(rng);
    const AnalyzerSettings settings{(rng.next_unit() - 0.5) * 7.0,
                                    (rng.next_unit() - 0.5) * 7.0};
    const double phi = rng.next_unit() * 2.0 * std::numbers::pi;
    const Complex phase{std::cos(phi), std::sin(phi)};
    const TwoPhotonState rotated{state.hh * phase, state.hv * phase, state.vh * phase,
                                 state.vv * phase};

    const auto a = entangled_joint(state, settings);
    const auto b = entangled_joint(rotated, settings);
    const auto c = entangled_joint(state, {settings.alpha + std::numbers::pi, settings.beta});
    const auto am = mixture_joint(state, settings);
    const auto bm = mixture_joint(rotated, settings);
    for (Outcome sigma : kOutcomes) {
      for (Outcome omega : kOutcomes) {
        REQUIRE_THAT(b.at(sigma, omega), WithinAbs(a.at(sigma, omega), 1e-12));
        REQUIRE_THAT(c.at(sigma, omega), WithinAbs(a.at(sigma, omega), 1e-12));
        REQUIRE_THAT(bm.at(sigma, omega), WithinAbs(am.at(sigma, omega), 1e-12));
      }
    }
  }
}

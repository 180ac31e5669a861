#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "rnl/core.hpp"
#include "rnl/errors.hpp"

namespace rnl {

using Complex = std::complex<double>;

/// Two-photon polarization state over the product basis
/// |HH>, |HV>, |VH>, |VV>. Amplitudes must be normalized.
struct TwoPhotonState {
  Complex hh{0.0};
  Complex hv{0.0};
  Complex vh{0.0};
  Complex vv{0.0};

  double norm_squared() const {
    return std::norm(hh) + std::norm(hv) + std::norm(vh) + std::norm(vv);
  }
};

inline void require_normalized(const TwoPhotonState& state,
                               double tolerance = kProbabilityTolerance) {
  const double n = state.norm_squared();
  if (!std::isfinite(n) || std::abs(n - 1.0) > tolerance) {
    throw ValidationError("two-photon state must be normalized, |amplitudes|^2 = " +
                          std::to_string(n));
  }
}

/// True if the preparation consists of the two classes (H1,H2) and (V1,V2)
/// only, i.e. the cross amplitudes vanish.
inline bool is_two_class(const TwoPhotonState& state,
                         double tolerance = kProbabilityTolerance) {
  return std::norm(state.hv) <= tolerance && std::norm(state.vh) <= tolerance;
}

/// Equal-weight two-class preparation -- the "maximally entangled" hypothesis
/// under which the doubling shortcut and the correlation product law hold.
inline bool is_equal_weight_two_class(const TwoPhotonState& state,
                                      double tolerance = kProbabilityTolerance) {
  return is_two_class(state, tolerance) &&
         std::abs(std::norm(state.hh) - 0.5) <= tolerance &&
         std::abs(std::norm(state.vv) - 0.5) <= tolerance;
}

/// Equal weights with relative phase pi between the classes, i.e. the
/// down-conversion state (|HH> - |VV>)/sqrt(2) up to a global phase.
inline bool is_bell_like(const TwoPhotonState& state,
                         double tolerance = kProbabilityTolerance) {
  return is_equal_weight_two_class(state, tolerance) &&
         std::abs(state.hh * std::conj(state.vv) + 0.5) <= tolerance;
}

/// (|HH> - |VV>)/sqrt(2).
inline TwoPhotonState bell_state() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {Complex{r, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}, Complex{-r, 0.0}};
}

/// Normalized two-class state with the given (unnormalized) class weights.
inline TwoPhotonState two_class_state(Complex w_hh, Complex w_vv) {
  const double n = std::norm(w_hh) + std::norm(w_vv);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("two_class_state needs a nonzero weight vector");
  }
  const double r = std::sqrt(n);
  return {w_hh / r, Complex{0.0, 0.0}, Complex{0.0, 0.0}, w_vv / r};
}

/// Polarization rotation angles applied to the two photons, radians.
/// All formulas downstream are pi-periodic in each angle.
struct AnalyzerSettings {
  double alpha{0.0};
  double beta{0.0};

  static AnalyzerSettings from_degrees(double alpha_deg, double beta_deg) {
    constexpr double rad = std::numbers::pi / 180.0;
    return {alpha_deg * rad, beta_deg * rad};
  }

  AnalyzerSettings reduced_mod_pi() const {
    auto reduce = [](double a) {
      double r = std::fmod(a, std::numbers::pi);
      if (r < 0.0) r += std::numbers::pi;
      if (r >= std::numbers::pi) r -= std::numbers::pi;  // the shift can round up to pi
      return r;
    };
    return {reduce(alpha), reduce(beta)};
  }
};

namespace detail {

// Rotation by theta in the H/V plane: H -> cos|H> + sin|V>, V -> -sin|H> + cos|V>.
struct Rotation {
  double c, s;
  explicit Rotation(double theta) : c(std::cos(theta)), s(std::sin(theta)) {}
  // entry <row|R|col> with H = 0, V = 1
  double at(int row, int col) const {
    if (col == 0) return row == 0 ? c : s;
    return row == 0 ? -s : c;
  }
};

}  // namespace detail

/// Joint distribution of the entangled (sum-of-probability-amplitudes)
/// prediction: rotate each photon, project on the H/V ports of the vertical
/// polarizing splitters, outcome +1 being the H port on both sides. For the
/// Bell state this gives P(++) = P(--) = cos^2(alpha+beta)/2 and correlation
/// cos 2(alpha+beta).
inline JointDistribution entangled_joint(const TwoPhotonState& state,
                                         const AnalyzerSettings& settings) {
  require_normalized(state);
  const detail::Rotation r1(settings.alpha);
  const detail::Rotation r2(settings.beta);
  const Complex a[2][2] = {{state.hh, state.hv}, {state.vh, state.vv}};
  JointDistribution out;
  for (Outcome sigma : kOutcomes) {
    for (Outcome omega : kOutcomes) {
      const int port1 = static_cast<int>(outcome_index(sigma));
      const int port2 = static_cast<int>(outcome_index(omega));
      Complex amp{0.0, 0.0};
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          amp += r1.at(port1, x) * r2.at(port2, y) * a[x][y];
        }
      }
      out.at(sigma, omega) = std::norm(amp);
    }
  }
  return out;
}

/// Joint distribution of the distinguishable (sum-of-probabilities)
/// prediction: the preparation is read as a classical mixture of the (H1,H2)
/// and (V1,V2) classes, each photon passing its analyzer independently. For
/// equal weights the correlation is cos 2alpha * cos 2beta.
inline JointDistribution mixture_joint(const TwoPhotonState& state,
                                       const AnalyzerSettings& settings) {
  require_normalized(state);
  if (!is_two_class(state)) {
    throw UnsupportedError(
        "mixture prediction is defined for two-class preparations only "
        "(cross amplitudes HV/VH must vanish)");
  }
  const double w_h = std::norm(state.hh);
  const double w_v = std::norm(state.vv);
  const double ca2 = std::cos(settings.alpha) * std::cos(settings.alpha);
  const double sa2 = std::sin(settings.alpha) * std::sin(settings.alpha);
  const double cb2 = std::cos(settings.beta) * std::cos(settings.beta);
  const double sb2 = std::sin(settings.beta) * std::sin(settings.beta);

  // P(H port | H, theta) = cos^2 theta, P(H port | V, theta) = sin^2 theta
  const OutcomeProbabilities p1_h{ca2, sa2}, p1_v{sa2, ca2};
  const OutcomeProbabilities p2_h{cb2, sb2}, p2_v{sb2, cb2};

  JointDistribution out;
  for (Outcome sigma : kOutcomes) {
    for (Outcome omega : kOutcomes) {
      out.at(sigma, omega) =
          w_h * p1_h.at(sigma) * p2_h.at(omega) + w_v * p1_v.at(sigma) * p2_v.at(omega);
    }
  }
  return out;
}

}  // namespace rnl

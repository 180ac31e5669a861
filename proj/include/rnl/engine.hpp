#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rnl/core.hpp"
#include "rnl/errors.hpp"
#include "rnl/quantum.hpp"
#include "rnl/timing.hpp"

namespace rnl {

/// One named residual of a prediction, with the tolerance it was held to.
struct CheckResult {
  std::string name;
  double residual{0.0};
  double tolerance{0.0};
  bool pass{false};
};

/// RNL and QM predictions for one experiment, side by side, plus the
/// internal consistency checks the calculus is supposed to satisfy.
struct PredictionReport {
  ExperimentLabel label{};
  JointDistribution rnl{};
  JointDistribution qm{};
  double rnl_correlation{0.0};
  double qm_correlation{0.0};
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;
};

/// Conditional probabilities from measurable quantities:
/// c(sigma|omega) = P(a_i, b_j)_{sigma omega} / P(b_j)_omega.
/// joint_ab is indexed (non-before outcome, before outcome); callers
/// conditioning on party 1 pass the transposed joint.
inline ConditionalTable conditional_table(const JointDistribution& joint_ab,
                                          const OutcomeProbabilities& before_marginal) {
  require_valid(joint_ab);
  if (!(before_marginal.plus > 0.0) || !(before_marginal.minus > 0.0)) {
    throw DegenerateConditioningError(
        "conditional on an outcome of probability zero is undefined");
  }
  ConditionalTable c;
  for (Outcome omega : kOutcomes) {
    auto& column = omega == Outcome::Plus ? c.given_plus : c.given_minus;
    column.plus = joint_ab.at(Outcome::Plus, omega) / before_marginal.at(omega);
    column.minus = joint_ab.at(Outcome::Minus, omega) / before_marginal.at(omega);
  }
  return c;
}

/// Shortcut valid under the maximal-entanglement hypothesis (both marginals
/// equal 1/2): c(sigma|omega) = 2 * P(a_i, b_j)_{sigma omega}.
inline ConditionalTable conditional_table_maxent(const JointDistribution& joint_ab) {
  require_valid(joint_ab);
  for (Party party : {Party::One, Party::Two}) {
    const auto m = marginal(joint_ab, party);
    if (std::abs(m.plus - 0.5) > kProbabilityTolerance ||
        std::abs(m.minus - 0.5) > kProbabilityTolerance) {
      throw ValidationError(
          "maximal-entanglement shortcut needs both marginals equal to 1/2");
    }
  }
  return {{2.0 * joint_ab.pp, 2.0 * joint_ab.mp}, {2.0 * joint_ab.pm, 2.0 * joint_ab.mm}};
}

/// The two-non-before composition: each particle chooses against the choice
/// the partner would have made in a before impact, weighted by the 2-before
/// distribution,
///
///   P(a1,a2)_{s'w'} = sum_{s,w} P(b1,b2)_{sw} c1(s'|w) c2(w'|s).
///
/// cond1 conditions particle 1's non-before outcome on particle 2's before
/// outcome; cond2 the mirror image.
inline JointDistribution two_nonbefore_joint(const JointDistribution& bb,
                                             const ConditionalTable& cond1,
                                             const ConditionalTable& cond2) {
  require_valid(bb);
  require_valid(cond1);
  require_valid(cond2);
  JointDistribution out;
  for (Outcome s1 : kOutcomes) {
    for (Outcome w1 : kOutcomes) {
      double acc = 0.0;
      for (Outcome sigma : kOutcomes) {
        for (Outcome omega : kOutcomes) {
          acc += bb.at(sigma, omega) * cond1.at(s1, omega) * cond2.at(w1, sigma);
        }
      }
      out.at(s1, w1) = acc;
    }
  }
  return out;
}

/// Closed form of the 2-non-before correlation for the Bell state:
/// E = cos 2alpha * cos 2beta * cos^2 2(alpha+beta).
inline double rnl_correlation_closed_form(const AnalyzerSettings& settings) {
  const double cross = std::cos(2.0 * (settings.alpha + settings.beta));
  return std::cos(2.0 * settings.alpha) * std::cos(2.0 * settings.beta) * cross * cross;
}

/// Product law residual |E(a,a) - E(b,b) E(a,b) E(b,a)|. Holds for
/// equal-weight two-class preparations.
inline double product_law_residual(double bb_correlation, double ab_correlation,
                                double ba_correlation, double aa_correlation) {
  return std::abs(aa_correlation - bb_correlation * ab_correlation * ba_correlation);
}

/// Largest marginal shift of each particle across the four experiment
/// kinds. A nonzero value would let the remote impact class act as a signal.
struct NoSignalingResidual {
  double particle1{0.0};
  double particle2{0.0};

  double max() const { return std::max(particle1, particle2); }
};

inline NoSignalingResidual no_signaling_residuals(const JointDistribution& bb,
                                                  const JointDistribution& ab,
                                                  const JointDistribution& ba,
                                                  const JointDistribution& aa) {
  NoSignalingResidual out;
  const JointDistribution* joints[] = {&bb, &ab, &ba, &aa};
  for (Party party : {Party::One, Party::Two}) {
    double lo_plus = 1.0, hi_plus = 0.0, lo_minus = 1.0, hi_minus = 0.0;
    for (const auto* j : joints) {
      const auto m = marginal(*j, party);
      lo_plus = std::min(lo_plus, m.plus);
      hi_plus = std::max(hi_plus, m.plus);
      lo_minus = std::min(lo_minus, m.minus);
      hi_minus = std::max(hi_minus, m.minus);
    }
    const double residual = std::max(hi_plus - lo_plus, hi_minus - lo_minus);
    (party == Party::One ? out.particle1 : out.particle2) = residual;
  }
  return out;
}

namespace detail {

// Ratio-rule conditionals, with zero-probability columns replaced by the
// uniform column. Such a column carries zero weight in the composition, so
// the substitution cannot move the result; it only keeps the table total.
inline ConditionalTable conditional_table_tolerant(const JointDistribution& joint_ab,
                                                   const OutcomeProbabilities& before,
                                                   std::vector<std::string>& warnings) {
  if (before.plus > 0.0 && before.minus > 0.0) {
    return conditional_table(joint_ab, before);
  }
  ConditionalTable c;
  for (Outcome omega : kOutcomes) {
    auto& column = omega == Outcome::Plus ? c.given_plus : c.given_minus;
    if (before.at(omega) > 0.0) {
      column.plus = joint_ab.at(Outcome::Plus, omega) / before.at(omega);
      column.minus = joint_ab.at(Outcome::Minus, omega) / before.at(omega);
    } else {
      column = {0.5, 0.5};
      warnings.push_back("degenerate conditioning: before outcome " + to_string(omega) +
                         " has probability zero; its column was set to uniform "
                         "(it receives zero weight)");
    }
  }
  return c;
}

struct LabelJoints {
  JointDistribution bb, ab, ba, aa;
};

// All four per-label RNL distributions for a two-class preparation.
inline LabelJoints rnl_label_joints(const TwoPhotonState& state,
                                    const AnalyzerSettings& settings,
                                    std::vector<std::string>& warnings) {
  LabelJoints j;
  j.bb = mixture_joint(state, settings);
  j.ab = entangled_joint(state, settings);
  j.ba = j.ab;
  const auto cond1 = conditional_table_tolerant(j.ab, marginal(j.ab, Party::Two), warnings);
  const auto cond2 =
      conditional_table_tolerant(j.ba.transposed(), marginal(j.ba, Party::One), warnings);
  j.aa = two_nonbefore_joint(j.bb, cond1, cond2);
  return j;
}

}  // namespace detail

/// Full prediction for one setup: classifies the impacts, dispatches the
/// matching composition rule, computes the QM reference, and attaches the
/// no-signaling, product-law and closed-form consistency checks.
///
/// Dispatch: (b,b) uses the mixture, one-before-one-non-before uses the
/// entangled joint, (a,a) uses the two-non-before composition seeded with
/// the mixture and conditionals derived from the entangled joint. The QM
/// reference only sees the markings: entangled for (u,u), mixture for (d,d).
inline PredictionReport predict(const SetupGeometry& setup, const TwoPhotonState& state,
                                const AnalyzerSettings& settings) {
  require_normalized(state);
  PredictionReport report;
  report.label = classify_experiment(setup);

  report.qm = setup.marking1 == Marking::Distinguishable
                  ? mixture_joint(state, settings)
                  : entangled_joint(state, settings);

  const bool two_class = is_two_class(state);
  if (two_class) {
    const auto joints = detail::rnl_label_joints(state, settings, report.warnings);
    if (report.label.two_before()) {
      report.rnl = joints.bb;
    } else if (report.label.two_nonbefore()) {
      report.rnl = joints.aa;
    } else if (report.label.particle1 == ImpactClass::NonBefore) {
      report.rnl = joints.ab;
    } else {
      report.rnl = joints.ba;
    }

    const auto ns = no_signaling_residuals(joints.bb, joints.ab, joints.ba, joints.aa);
    report.checks.push_back({"no_signaling_particle1", ns.particle1, kProbabilityTolerance,
                             ns.particle1 <= kProbabilityTolerance});
    report.checks.push_back({"no_signaling_particle2", ns.particle2, kProbabilityTolerance,
                             ns.particle2 <= kProbabilityTolerance});

    if (is_equal_weight_two_class(state)) {
      constexpr double tol = 1e-12;
      const double residual =
          product_law_residual(correlation(joints.bb), correlation(joints.ab),
                            correlation(joints.ba), correlation(joints.aa));
      report.checks.push_back({"product_law", residual, tol, residual <= tol});
    } else {
      report.warnings.push_back(
          "preparation is not equal-weight: product-law check skipped "
          "(outside stated hypotheses)");
    }
    if (is_bell_like(state)) {
      constexpr double tol = 1e-12;
      const double residual =
          std::abs(correlation(joints.aa) - rnl_correlation_closed_form(settings));
      report.checks.push_back({"closed_form_cross_check", residual, tol, residual <= tol});
    }
  } else {
    // Only the mixed labels are defined without a two-class preparation.
    if (report.label.two_before() || report.label.two_nonbefore()) {
      throw UnsupportedError(
          "2-before and 2-non-before predictions need a two-class preparation");
    }
    report.rnl = entangled_joint(state, settings);
    report.warnings.push_back(
        "preparation is not two-class: consistency checks skipped");
  }

  report.rnl_correlation = correlation(report.rnl);
  report.qm_correlation = correlation(report.qm);
  return report;
}

}  // namespace rnl

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rnl/errors.hpp"

namespace rnl {

/// Tolerance used when validating analytically produced probabilities.
/// Everything upstream is closed-form double arithmetic, so anything
/// beyond rounding error indicates a bug, not noise.
inline constexpr double kProbabilityTolerance = 1e-9;

/// Detector label of one particle: +1 for D(+1), -1 for D(-1).
enum class Outcome : int { Plus = +1, Minus = -1 };

inline constexpr std::array<Outcome, 2> kOutcomes{Outcome::Plus, Outcome::Minus};

constexpr int value(Outcome o) { return static_cast<int>(o); }

constexpr Outcome negate(Outcome o) {
  return o == Outcome::Plus ? Outcome::Minus : Outcome::Plus;
}

constexpr std::size_t outcome_index(Outcome o) {
  return o == Outcome::Plus ? 0 : 1;
}

inline std::string to_string(Outcome o) { return o == Outcome::Plus ? "+" : "-"; }

enum class Party { One = 1, Two = 2 };

/// The four coincidence probabilities P(sigma, omega) of one experiment,
/// party-1 outcome first. Stored as explicit entries because every rule
/// of the calculus manipulates the four entries directly.
struct JointDistribution {
  double pp{0.0};
  double pm{0.0};
  double mp{0.0};
  double mm{0.0};

  double at(Outcome sigma, Outcome omega) const {
    if (sigma == Outcome::Plus) return omega == Outcome::Plus ? pp : pm;
    return omega == Outcome::Plus ? mp : mm;
  }

  double& at(Outcome sigma, Outcome omega) {
    if (sigma == Outcome::Plus) return omega == Outcome::Plus ? pp : pm;
    return omega == Outcome::Plus ? mp : mm;
  }

  double sum() const { return pp + pm + mp + mm; }

  /// Swaps the two parties.
  JointDistribution transposed() const { return {pp, mp, pm, mm}; }

  friend bool operator==(const JointDistribution&, const JointDistribution&) = default;
};

/// Ready-made distributions used all over the tests.
inline JointDistribution uniform_joint() { return {0.25, 0.25, 0.25, 0.25}; }

/// One violated invariant of a JointDistribution.
struct Violation {
  std::string invariant;
  double value;
  double tolerance;
};

/// Checks non-negativity (within tolerance) and normalization of all four
/// entries. Returns one entry per violated invariant; empty means valid.
inline std::vector<Violation> validate_distribution(
    const JointDistribution& j, double tolerance = kProbabilityTolerance) {
  std::vector<Violation> out;
  const struct {
    const char* name;
    double p;
  } entries[] = {{"pp", j.pp}, {"pm", j.pm}, {"mp", j.mp}, {"mm", j.mm}};
  for (const auto& e : entries) {
    if (!std::isfinite(e.p)) {
      out.push_back({std::string("entry ") + e.name + " is not finite", e.p, tolerance});
    } else if (e.p < -tolerance) {
      out.push_back({std::string("entry ") + e.name + " is negative", e.p, tolerance});
    }
  }
  const double total = j.sum();
  if (!std::isfinite(total) || std::abs(total - 1.0) > tolerance) {
    out.push_back({"entries must sum to 1", total, tolerance});
  }
  return out;
}

inline bool is_valid_distribution(const JointDistribution& j,
                                  double tolerance = kProbabilityTolerance) {
  return validate_distribution(j, tolerance).empty();
}

/// Throws ValidationError naming the first violated invariant.
inline void require_valid(const JointDistribution& j,
                          double tolerance = kProbabilityTolerance) {
  const auto violations = validate_distribution(j, tolerance);
  if (!violations.empty()) {
    throw ValidationError("invalid joint distribution: " + violations.front().invariant +
                          " (value " + std::to_string(violations.front().value) + ")");
  }
}

/// Per-outcome probabilities of a single party.
struct OutcomeProbabilities {
  double plus{0.0};
  double minus{0.0};

  double at(Outcome o) const { return o == Outcome::Plus ? plus : minus; }
  double sum() const { return plus + minus; }

  friend bool operator==(const OutcomeProbabilities&, const OutcomeProbabilities&) = default;
};

/// Correlation coefficient E = sum over sigma, omega of sigma*omega*P.
inline double correlation(const JointDistribution& j) {
  require_valid(j);
  return (j.pp + j.mm) - (j.pm + j.mp);
}

/// Single-party marginal: party 1 sums over omega, party 2 over sigma.
inline OutcomeProbabilities marginal(const JointDistribution& j, Party party) {
  require_valid(j);
  if (party == Party::One) return {j.pp + j.pm, j.mp + j.mm};
  return {j.pp + j.mp, j.pm + j.mm};
}

/// Probability of total value sigma: + collects the agreeing outcomes
/// (+1,+1) and (-1,-1), - the disagreeing ones.
inline double total_value_probability(const JointDistribution& j, Outcome total) {
  require_valid(j);
  return total == Outcome::Plus ? j.pp + j.mm : j.pm + j.mp;
}

/// Conditional probabilities c(sigma'|omega): particle i yields sigma' in a
/// non-before impact given particle j yielded omega in a before one. These
/// are not measurable from count rates; the calculus derives them.
struct ConditionalTable {
  // columns indexed by the conditioning (before) outcome
  OutcomeProbabilities given_plus{};
  OutcomeProbabilities given_minus{};

  double at(Outcome nonbefore, Outcome before) const {
    return (before == Outcome::Plus ? given_plus : given_minus).at(nonbefore);
  }

  friend bool operator==(const ConditionalTable&, const ConditionalTable&) = default;
};

inline std::vector<Violation> validate_conditional(
    const ConditionalTable& c, double tolerance = kProbabilityTolerance) {
  std::vector<Violation> out;
  const struct {
    const char* name;
    const OutcomeProbabilities& col;
  } cols[] = {{"given +", c.given_plus}, {"given -", c.given_minus}};
  for (const auto& col : cols) {
    for (double p : {col.col.plus, col.col.minus}) {
      if (!(p >= -tolerance && p <= 1.0 + tolerance)) {
        out.push_back({std::string("column ") + col.name + " has an entry outside [0,1]", p,
                       tolerance});
      }
    }
    if (std::abs(col.col.sum() - 1.0) > tolerance) {
      out.push_back({std::string("column ") + col.name + " must sum to 1", col.col.sum(),
                     tolerance});
    }
  }
  return out;
}

inline void require_valid(const ConditionalTable& c,
                          double tolerance = kProbabilityTolerance) {
  const auto violations = validate_conditional(c, tolerance);
  if (!violations.empty()) {
    throw ValidationError("invalid conditional table: " + violations.front().invariant +
                          " (value " + std::to_string(violations.front().value) + ")");
  }
}

}  // namespace rnl

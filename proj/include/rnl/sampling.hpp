#pragma once

#include <cmath>
#include <cstdint>

#include "rnl/core.hpp"
#include "rnl/errors.hpp"

namespace rnl {

/// SplitMix64 (Steele, Lea & Flood / Vigna), the pinned generator of this
/// library. Chosen because its i-th output is a pure function of the seed,
///
///   output(seed, i) = finalize(seed + (i+1) * 0x9E3779B97F4A7C15),
///
/// so a sampling job can be cut into chunks at arbitrary offsets with
/// advance_seed() and the merged counts are bit-identical to the single
/// stream. Reference vectors are frozen in the test suite.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Seed whose stream continues the given stream after n draws.
  static std::uint64_t advance_seed(std::uint64_t seed, std::uint64_t n) {
    return seed + n * 0x9E3779B97F4A7C15ULL;
  }

 private:
  std::uint64_t state_;
};

/// Coincidence counts of N simulated pairs, plus the seed that produced
/// them. A merged record keeps the first parent's seed.
struct CountRecord {
  std::uint64_t pp{0};
  std::uint64_t pm{0};
  std::uint64_t mp{0};
  std::uint64_t mm{0};
  std::uint64_t total{0};
  std::uint64_t seed{0};

  std::uint64_t sum() const { return pp + pm + mp + mm; }

  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

/// Draws N independent pairs from the categorical distribution over the
/// outcomes ordered (++, +-, -+, --) via cumulative thresholds on one unit
/// draw each. Deterministic given (J, N, seed).
inline CountRecord sample_pairs(const JointDistribution& joint, std::uint64_t n,
                                std::uint64_t seed) {
  require_valid(joint);
  if (n == 0) throw DomainError("sample_pairs needs at least one pair");
  const double z1 = joint.pp;
  const double z2 = joint.pp + joint.pm;
  const double z3 = joint.pp + joint.pm + joint.mp;
  CountRecord record;
  record.total = n;
  record.seed = seed;
  SplitMix64 rng(seed);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    if (u < z1) {
      ++record.pp;
    } else if (u < z2) {
      ++record.pm;
    } else if (u < z3) {
      ++record.mp;
    } else {
      ++record.mm;
    }
  }
  return record;
}

/// Counts add; the merged record keeps the left seed.
inline CountRecord merge(const CountRecord& a, const CountRecord& b) {
  return {a.pp + b.pp, a.pm + b.pm, a.mp + b.mp, a.mm + b.mm, a.total + b.total, a.seed};
}

/// Estimated correlation with its plug-in standard error
/// sqrt((1 - E^2)/N); approximate near |E| = 1 where the plug-in variance
/// vanishes.
struct EstimateReport {
  double correlation_estimate{0.0};
  double standard_error{0.0};
  JointDistribution frequencies{};
};

inline EstimateReport estimate(const CountRecord& record) {
  if (record.total == 0) throw DomainError("estimate needs at least one pair");
  const double n = static_cast<double>(record.total);
  EstimateReport out;
  out.frequencies = {static_cast<double>(record.pp) / n, static_cast<double>(record.pm) / n,
                     static_cast<double>(record.mp) / n, static_cast<double>(record.mm) / n};
  const double signed_sum = (static_cast<double>(record.pp) + static_cast<double>(record.mm)) -
                            (static_cast<double>(record.pm) + static_cast<double>(record.mp));
  out.correlation_estimate = signed_sum / n;
  const double variance = (1.0 - out.correlation_estimate * out.correlation_estimate) / n;
  out.standard_error = std::sqrt(std::max(variance, 0.0));
  return out;
}

/// Separation of two correlation values in units of the combined standard
/// error at sample size N per experiment. Equal inputs give 0; a vanishing
/// variance on one side leaves |E1 - E2| * sqrt(N / (1 - E_other^2)).
inline double discrimination_power(double e1, double e2, std::uint64_t n) {
  if (n == 0) throw DomainError("discrimination_power needs at least one pair");
  if (e1 == e2) return 0.0;
  const double nn = static_cast<double>(n);
  const double var = (1.0 - e1 * e1) / nn + (1.0 - e2 * e2) / nn;
  return std::abs(e1 - e2) / std::sqrt(var);
}

}  // namespace rnl

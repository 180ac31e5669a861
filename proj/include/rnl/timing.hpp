#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rnl/errors.hpp"

namespace rnl {

/// Speed of light in vacuum, m/s (exact by definition).
inline constexpr double kSpeedOfLight = 299792458.0;

/// A photon impact on its beam-splitter, in lab-frame coordinates along the
/// source-splitter axis. v is the splitter's instantaneous velocity at the
/// impact moment; no trajectory is tracked.
struct ImpactEvent {
  double t{0.0};  // s
  double x{0.0};  // m
  double v{0.0};  // m/s, signed

  friend bool operator==(const ImpactEvent&, const ImpactEvent&) = default;
};

/// Whether pair membership stays unknowable after the splitter (u) or
/// becomes knowable (d).
enum class Marking { Indistinguishable, Distinguishable };

inline std::string to_string(Marking m) {
  return m == Marking::Indistinguishable ? "u" : "d";
}

enum class ImpactClass { Before, NonBefore };

inline std::string to_string(ImpactClass c) {
  return c == ImpactClass::Before ? "before" : "non_before";
}

struct SetupGeometry {
  ImpactEvent event1{};
  ImpactEvent event2{};
  Marking marking1{Marking::Indistinguishable};
  Marking marking2{Marking::Indistinguishable};
};

/// Kind of impact each particle undergoes: a = non-before, b = before.
struct ExperimentLabel {
  ImpactClass particle1{ImpactClass::Before};
  ImpactClass particle2{ImpactClass::Before};

  bool two_nonbefore() const {
    return particle1 == ImpactClass::NonBefore && particle2 == ImpactClass::NonBefore;
  }
  bool two_before() const {
    return particle1 == ImpactClass::Before && particle2 == ImpactClass::Before;
  }

  friend bool operator==(const ExperimentLabel&, const ExperimentLabel&) = default;
};

inline std::string to_string(ExperimentLabel label) {
  auto ch = [](ImpactClass c) { return c == ImpactClass::NonBefore ? 'a' : 'b'; };
  return std::string{ch(label.particle1), ch(label.particle2)};
}

inline void require_subluminal(const ImpactEvent& e) {
  if (!(std::abs(e.v) < kSpeedOfLight)) {
    throw DomainError("beam-splitter velocity must satisfy |v| < c, got " +
                      std::to_string(e.v) + " m/s");
  }
}

/// Time ordering of two lab-frame events as seen from the inertial frame
/// moving at frame_velocity:
///
///   gap = (t_own - t_other) - frame_velocity * (x_own - x_other) / c^2
///
/// The Lorentz factor is dropped on purpose; it is strictly positive, only
/// the sign decides the physics, and omitting it keeps the cancellation-prone
/// part small. gap >= 0 means own does not precede other in that frame.
///
/// Near the classification boundary the two terms agree to within a factor
/// of two and their subtraction is exact (Sterbenz), so no residual
/// compensation is applied; the velocity term is rounded by the same
/// operation sequence as max_delay, which puts the classification boundary
/// bit-exactly on the planner's value. Every operation is odd under
/// exchanging the two events, so gap(A,B,v) == -gap(B,A,v) holds bit-exact.
inline double simultaneity_gap(const ImpactEvent& own, const ImpactEvent& other,
                               double frame_velocity) {
  if (!(std::abs(frame_velocity) < kSpeedOfLight)) {
    throw DomainError("frame velocity must satisfy |v| < c, got " +
                      std::to_string(frame_velocity) + " m/s");
  }
  constexpr double c2 = kSpeedOfLight * kSpeedOfLight;
  const double dt = own.t - other.t;
  const double dx = own.x - other.x;
  return dt - frame_velocity * dx / c2;
}

/// Definition of before/non-before. d,d markings force a before impact no
/// matter the timing; u,u impacts are classified by the sign of the
/// simultaneity gap in the splitter's own rest frame, with the tie gap == 0
/// counting as non-before.
inline ImpactClass classify_impact(const ImpactEvent& own, const ImpactEvent& other,
                                   Marking own_marking, Marking other_marking) {
  require_subluminal(own);
  require_subluminal(other);
  if (own_marking != other_marking) {
    throw UnsupportedError(
        "mixed markings (one u, one d) have no defined impact class");
  }
  if (own_marking == Marking::Distinguishable) return ImpactClass::Before;
  return simultaneity_gap(own, other, own.v) < 0.0 ? ImpactClass::Before
                                                   : ImpactClass::NonBefore;
}

/// Classifies both impacts of a setup, each against the other in its own
/// splitter's rest frame.
inline ExperimentLabel classify_experiment(const SetupGeometry& setup) {
  return {classify_impact(setup.event1, setup.event2, setup.marking1, setup.marking2),
          classify_impact(setup.event2, setup.event1, setup.marking2, setup.marking1)};
}

/// Upper bound V*L/c^2 on the lab-frame delay that still leaves the impact
/// at the splitter moving with speed V non-before, for splitter distance L.
inline double max_delay(double splitter_speed, double distance) {
  if (!(splitter_speed >= 0.0) || !(distance >= 0.0)) {
    throw DomainError("max_delay needs V >= 0 and L >= 0");
  }
  if (!(splitter_speed < kSpeedOfLight)) {
    throw DomainError("max_delay needs V < c");
  }
  return splitter_speed * distance / (kSpeedOfLight * kSpeedOfLight);
}

struct FeasibilityRow {
  double v_mps;
  double l_m;
  double dt_max_s;
};

/// Inclusive linear grid; steps == 1 collapses to start.
struct GridRange {
  double start{0.0};
  double stop{0.0};
  std::size_t steps{1};
};

inline double grid_value(const GridRange& r, std::size_t i) {
  if (r.steps <= 1) return r.start;
  return r.start + static_cast<double>(i) * (r.stop - r.start) /
                       static_cast<double>(r.steps - 1);
}

/// Tabulates max_delay over a (V, L) grid, V outer, L inner.
inline std::vector<FeasibilityRow> feasibility_sweep(const GridRange& v_range,
                                                     const GridRange& l_range) {
  for (const auto* r : {&v_range, &l_range}) {
    if (r->steps == 0) throw DomainError("feasibility grid must have at least one step");
    if (r->stop < r->start) throw DomainError("feasibility grid range is inverted");
    if (r->start < 0.0) throw DomainError("feasibility grid must be nonnegative");
  }
  if (!(v_range.stop < kSpeedOfLight)) {
    throw DomainError("feasibility sweep needs V < c");
  }
  std::vector<FeasibilityRow> rows;
  rows.reserve(v_range.steps * l_range.steps);
  for (std::size_t i = 0; i < v_range.steps; ++i) {
    const double v = grid_value(v_range, i);
    for (std::size_t k = 0; k < l_range.steps; ++k) {
      const double l = grid_value(l_range, k);
      rows.push_back({v, l, max_delay(v, l)});
    }
  }
  return rows;
}

}  // namespace rnl

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rnl/quantum.hpp"
#include "rnl/serialize.hpp"
#include "rnl/timing.hpp"

namespace rnl {

inline constexpr const char* kConfigSchema = "rnl-lab/1";
inline constexpr double kDefaultFeasibilityMargin = 0.1;

/// Config rejected; issues carry one "path: problem" line per finding.
struct ConfigError : Error {
  explicit ConfigError(std::vector<std::string> found)
      : Error(join(found)), issues(std::move(found)) {}

  std::vector<std::string> issues;

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string msg = "invalid config:";
    for (const auto& issue : issues) msg += "\n  " + issue;
    return msg;
  }
};

/// "bell" or explicit two-class weights.
struct StateSpec {
  bool bell{true};
  Complex w_hh{1.0};
  Complex w_vv{-1.0};

  TwoPhotonState make() const {
    return bell ? bell_state() : two_class_state(w_hh, w_vv);
  }

  friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

struct SweepSpec {
  enum class Axis { Alpha, Beta };
  enum class Link { None, Equal, Opposite };

  Axis axis{Axis::Alpha};
  double start_deg{0.0};
  double stop_deg{0.0};
  std::size_t steps{1};
  Link link{Link::None};

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct MonteCarloSpec {
  std::uint64_t pairs{1};
  std::uint64_t seed{0};

  friend bool operator==(const MonteCarloSpec&, const MonteCarloSpec&) = default;
};

struct FeasibilitySpec {
  GridRange v_mps{};
  GridRange l_m{};
  double margin{kDefaultFeasibilityMargin};

  friend bool operator==(const FeasibilitySpec&, const FeasibilitySpec&) = default;
};

inline bool operator==(const GridRange& a, const GridRange& b) {
  return a.start == b.start && a.stop == b.stop && a.steps == b.steps;
}

inline bool operator==(const SetupGeometry& a, const SetupGeometry& b) {
  return a.event1 == b.event1 && a.event2 == b.event2 && a.marking1 == b.marking1 &&
         a.marking2 == b.marking2;
}

/// Everything one experiment run needs. Angles live in degrees here and are
/// echoed back verbatim; conversion to radians happens at the math boundary.
struct ExperimentConfig {
  SetupGeometry geometry{};
  StateSpec state{};
  double alpha_deg{0.0};
  double beta_deg{0.0};
  std::optional<SweepSpec> sweep;
  std::optional<MonteCarloSpec> montecarlo;
  std::optional<FeasibilitySpec> feasibility;

  AnalyzerSettings settings() const {
    return AnalyzerSettings::from_degrees(alpha_deg, beta_deg);
  }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

namespace detail {

class ConfigReader {
 public:
  void check_keys(const Json& node, const std::string& path,
                  std::initializer_list<const char*> known) {
    if (!node.is_object()) {
      issue(path, "must be an object");
      return;
    }
    for (const auto& item : node.items()) {
      bool found = false;
      for (const char* k : known) {
        if (item.key() == k) {
          found = true;
          break;
        }
      }
      if (!found) issue(path + "." + item.key(), "unknown key");
    }
  }

  const Json* require(const Json& node, const std::string& path, const char* key) {
    if (!node.is_object() || !node.contains(key)) {
      issue(path + "." + key, "missing required field");
      return nullptr;
    }
    return &node.at(key);
  }

  double number(const Json& node, const std::string& path) {
    if (!node.is_number()) {
      issue(path, "must be a number");
      return 0.0;
    }
    const double v = node.get<double>();
    if (!std::isfinite(v)) issue(path, "must be finite");
    return v;
  }

  std::uint64_t unsigned_integer(const Json& node, const std::string& path) {
    if (!node.is_number_unsigned()) {
      issue(path, "must be a nonnegative integer");
      return 0;
    }
    return node.get<std::uint64_t>();
  }

  void issue(const std::string& path, const std::string& what) {
    issues_.push_back(path + ": " + what);
  }

  bool ok() const { return issues_.empty(); }
  std::vector<std::string> take() { return std::move(issues_); }

 private:
  std::vector<std::string> issues_;
};

inline ImpactEvent parse_event(ConfigReader& r, const Json& node, const std::string& path) {
  r.check_keys(node, path, {"t_s", "x_m", "v_mps"});
  ImpactEvent event;
  if (const auto* t = r.require(node, path, "t_s")) event.t = r.number(*t, path + ".t_s");
  if (const auto* x = r.require(node, path, "x_m")) event.x = r.number(*x, path + ".x_m");
  if (const auto* v = r.require(node, path, "v_mps")) {
    event.v = r.number(*v, path + ".v_mps");
    if (!(std::abs(event.v) < kSpeedOfLight)) {
      r.issue(path + ".v_mps", "magnitude must be below c = 299792458 m/s, got " +
                                   format_double(event.v));
    }
  }
  return event;
}

inline Marking parse_marking(ConfigReader& r, const Json& node, const std::string& path) {
  if (node.is_string()) {
    const auto s = node.get<std::string>();
    if (s == "u") return Marking::Indistinguishable;
    if (s == "d") return Marking::Distinguishable;
  }
  r.issue(path, "must be \"u\" or \"d\"");
  return Marking::Indistinguishable;
}

inline Complex parse_weight(ConfigReader& r, const Json& node, const std::string& path) {
  if (node.is_number()) return Complex{node.get<double>(), 0.0};
  if (node.is_array() && node.size() == 2 && node[0].is_number() && node[1].is_number()) {
    return Complex{node[0].get<double>(), node[1].get<double>()};
  }
  r.issue(path, "must be a number or a [re, im] pair");
  return Complex{0.0, 0.0};
}

inline GridRange parse_grid(ConfigReader& r, const Json& parent, const std::string& path,
                            const char* start_key, const char* stop_key,
                            const char* steps_key) {
  GridRange g;
  if (const auto* v = r.require(parent, path, start_key)) {
    g.start = r.number(*v, path + "." + start_key);
  }
  if (const auto* v = r.require(parent, path, stop_key)) {
    g.stop = r.number(*v, path + "." + stop_key);
  }
  if (const auto* v = r.require(parent, path, steps_key)) {
    g.steps = static_cast<std::size_t>(r.unsigned_integer(*v, path + "." + steps_key));
    if (g.steps == 0) r.issue(path + "." + steps_key, "must be at least 1");
  }
  if (g.stop < g.start) {
    r.issue(path, std::string("range is inverted (") + start_key + " > " + stop_key + ")");
  }
  return g;
}

}  // namespace detail

/// Parses and validates a config document. Collects every problem it can
/// find and throws one ConfigError listing them all; unknown keys are
/// rejected so a typo cannot silently change the physics.
inline ExperimentConfig parse_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({std::string("document: not valid JSON (") + e.what() + ")"});
  }

  detail::ConfigReader r;
  ExperimentConfig config;

  r.check_keys(doc, "config",
               {"schema", "geometry", "markings", "state", "angles", "sweep", "montecarlo",
                "feasibility"});

  if (const auto* schema = r.require(doc, "config", "schema")) {
    if (!schema->is_string() || schema->get<std::string>() != kConfigSchema) {
      r.issue("config.schema", std::string("must be \"") + kConfigSchema + "\"");
    }
  }

  if (const auto* geometry = r.require(doc, "config", "geometry")) {
    r.check_keys(*geometry, "geometry", {"particle1", "particle2"});
    if (const auto* p1 = r.require(*geometry, "geometry", "particle1")) {
      config.geometry.event1 = detail::parse_event(r, *p1, "geometry.particle1");
    }
    if (const auto* p2 = r.require(*geometry, "geometry", "particle2")) {
      config.geometry.event2 = detail::parse_event(r, *p2, "geometry.particle2");
    }
  }

  if (const auto* markings = r.require(doc, "config", "markings")) {
    r.check_keys(*markings, "markings", {"particle1", "particle2"});
    if (const auto* m1 = r.require(*markings, "markings", "particle1")) {
      config.geometry.marking1 = detail::parse_marking(r, *m1, "markings.particle1");
    }
    if (const auto* m2 = r.require(*markings, "markings", "particle2")) {
      config.geometry.marking2 = detail::parse_marking(r, *m2, "markings.particle2");
    }
  }

  if (const auto* state = r.require(doc, "config", "state")) {
    if (state->is_string()) {
      if (state->get<std::string>() == "bell") {
        config.state = StateSpec{};
      } else {
        r.issue("config.state", "string form must be \"bell\"");
      }
    } else if (state->is_object()) {
      r.check_keys(*state, "state", {"w_hh", "w_vv"});
      config.state.bell = false;
      if (const auto* w = r.require(*state, "state", "w_hh")) {
        config.state.w_hh = detail::parse_weight(r, *w, "state.w_hh");
      }
      if (const auto* w = r.require(*state, "state", "w_vv")) {
        config.state.w_vv = detail::parse_weight(r, *w, "state.w_vv");
      }
      if (r.ok() && std::norm(config.state.w_hh) + std::norm(config.state.w_vv) <= 0.0) {
        r.issue("config.state", "weights must not both be zero");
      }
    } else {
      r.issue("config.state", "must be \"bell\" or an object with w_hh and w_vv");
    }
  }

  if (const auto* angles = r.require(doc, "config", "angles")) {
    r.check_keys(*angles, "angles", {"alpha_deg", "beta_deg"});
    if (const auto* a = r.require(*angles, "angles", "alpha_deg")) {
      config.alpha_deg = r.number(*a, "angles.alpha_deg");
    }
    if (const auto* b = r.require(*angles, "angles", "beta_deg")) {
      config.beta_deg = r.number(*b, "angles.beta_deg");
    }
  }

  if (doc.is_object() && doc.contains("sweep")) {
    const auto& node = doc.at("sweep");
    r.check_keys(node, "sweep", {"axis", "start_deg", "stop_deg", "steps", "link"});
    SweepSpec sweep;
    if (const auto* axis = r.require(node, "sweep", "axis")) {
      if (axis->is_string() && axis->get<std::string>() == "alpha") {
        sweep.axis = SweepSpec::Axis::Alpha;
      } else if (axis->is_string() && axis->get<std::string>() == "beta") {
        sweep.axis = SweepSpec::Axis::Beta;
      } else {
        r.issue("sweep.axis", "must be \"alpha\" or \"beta\"");
      }
    }
    if (const auto* v = r.require(node, "sweep", "start_deg")) {
      sweep.start_deg = r.number(*v, "sweep.start_deg");
    }
    if (const auto* v = r.require(node, "sweep", "stop_deg")) {
      sweep.stop_deg = r.number(*v, "sweep.stop_deg");
    }
    if (const auto* v = r.require(node, "sweep", "steps")) {
      sweep.steps = static_cast<std::size_t>(r.unsigned_integer(*v, "sweep.steps"));
      if (sweep.steps == 0) r.issue("sweep.steps", "must be at least 1");
    }
    if (node.is_object() && node.contains("link")) {
      const auto& link = node.at("link");
      const std::string s = link.is_string() ? link.get<std::string>() : "";
      if (s == "none") {
        sweep.link = SweepSpec::Link::None;
      } else if (s == "equal") {
        sweep.link = SweepSpec::Link::Equal;
      } else if (s == "opposite") {
        sweep.link = SweepSpec::Link::Opposite;
      } else {
        r.issue("sweep.link", "must be \"none\", \"equal\" or \"opposite\"");
      }
    }
    config.sweep = sweep;
  }

  if (doc.is_object() && doc.contains("montecarlo")) {
    const auto& node = doc.at("montecarlo");
    r.check_keys(node, "montecarlo", {"pairs", "seed"});
    MonteCarloSpec mc;
    if (const auto* v = r.require(node, "montecarlo", "pairs")) {
      mc.pairs = r.unsigned_integer(*v, "montecarlo.pairs");
      if (mc.pairs == 0) r.issue("montecarlo.pairs", "must be at least 1");
    }
    if (const auto* v = r.require(node, "montecarlo", "seed")) {
      mc.seed = r.unsigned_integer(*v, "montecarlo.seed");
    }
    config.montecarlo = mc;
  }

  if (doc.is_object() && doc.contains("feasibility")) {
    const auto& node = doc.at("feasibility");
    r.check_keys(node, "feasibility",
                 {"v_start_mps", "v_stop_mps", "v_steps", "l_start_m", "l_stop_m", "l_steps",
                  "margin"});
    FeasibilitySpec f;
    f.v_mps = detail::parse_grid(r, node, "feasibility", "v_start_mps", "v_stop_mps", "v_steps");
    f.l_m = detail::parse_grid(r, node, "feasibility", "l_start_m", "l_stop_m", "l_steps");
    if (f.v_mps.start < 0.0) r.issue("feasibility.v_start_mps", "must be nonnegative");
    if (f.l_m.start < 0.0) r.issue("feasibility.l_start_m", "must be nonnegative");
    if (!(f.v_mps.stop < kSpeedOfLight)) {
      r.issue("feasibility.v_stop_mps", "must be below c = 299792458 m/s");
    }
    if (node.is_object() && node.contains("margin")) {
      f.margin = r.number(node.at("margin"), "feasibility.margin");
      if (!(f.margin >= 0.0 && f.margin < 1.0)) {
        r.issue("feasibility.margin", "must be in [0, 1)");
      }
    }
    config.feasibility = f;
  }

  if (!r.ok()) throw ConfigError(r.take());
  return config;
}

inline Json to_json(const ExperimentConfig& config) {
  auto event = [](const ImpactEvent& e) {
    return Json{{"t_s", e.t}, {"x_m", e.x}, {"v_mps", e.v}};
  };
  Json doc{{"schema", kConfigSchema},
           {"geometry",
            Json{{"particle1", event(config.geometry.event1)},
                 {"particle2", event(config.geometry.event2)}}},
           {"markings",
            Json{{"particle1", to_string(config.geometry.marking1)},
                 {"particle2", to_string(config.geometry.marking2)}}}};
  if (config.state.bell) {
    doc["state"] = "bell";
  } else {
    doc["state"] = Json{{"w_hh", Json::array({config.state.w_hh.real(), config.state.w_hh.imag()})},
                        {"w_vv", Json::array({config.state.w_vv.real(), config.state.w_vv.imag()})}};
  }
  doc["angles"] = Json{{"alpha_deg", config.alpha_deg}, {"beta_deg", config.beta_deg}};
  if (config.sweep) {
    const auto& s = *config.sweep;
    doc["sweep"] = Json{{"axis", s.axis == SweepSpec::Axis::Alpha ? "alpha" : "beta"},
                        {"start_deg", s.start_deg},
                        {"stop_deg", s.stop_deg},
                        {"steps", s.steps},
                        {"link", s.link == SweepSpec::Link::None
                                     ? "none"
                                     : (s.link == SweepSpec::Link::Equal ? "equal" : "opposite")}};
  }
  if (config.montecarlo) {
    doc["montecarlo"] = Json{{"pairs", config.montecarlo->pairs}, {"seed", config.montecarlo->seed}};
  }
  if (config.feasibility) {
    const auto& f = *config.feasibility;
    doc["feasibility"] = Json{{"v_start_mps", f.v_mps.start}, {"v_stop_mps", f.v_mps.stop},
                              {"v_steps", f.v_mps.steps},     {"l_start_m", f.l_m.start},
                              {"l_stop_m", f.l_m.stop},       {"l_steps", f.l_m.steps},
                              {"margin", f.margin}};
  }
  return doc;
}

}  // namespace rnl

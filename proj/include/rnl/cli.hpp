#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rnl/config.hpp"
#include "rnl/engine.hpp"
#include "rnl/sampling.hpp"
#include "rnl/serialize.hpp"

namespace rnl {

enum class Command { Classify, Predict, Sweep, Feasibility, Simulate };

enum class OutputFormat { Json, Csv };

/// Exit statuses of run(): Ok for success, ValidationFailure for inputs the
/// model rejects, RuntimeFailure for everything else.
enum class RunStatus : int { Ok = 0, ValidationFailure = 1, RuntimeFailure = 2 };

inline Json classify_json(const ExperimentConfig& config) {
  const auto& g = config.geometry;
  const auto label = classify_experiment(g);
  auto side = [](ImpactClass c, double gap) {
    return Json{{"class", to_string(c)}, {"gap_s", gap}};
  };
  // the per-frame gaps make near-boundary setups debuggable
  return Json{{"label", to_string(label)},
              {"particle1",
               side(label.particle1, simultaneity_gap(g.event1, g.event2, g.event1.v))},
              {"particle2",
               side(label.particle2, simultaneity_gap(g.event2, g.event1, g.event2.v))}};
}

/// Angle grid of one sweep: the correlation every rule assigns at each
/// setting. E_rnl is the two-non-before composition, E_qm the entangled
/// prediction, E_bb the mixture, E_ab the one-before-one-non-before rule.
inline std::vector<SweepRow> compute_sweep(const ExperimentConfig& config) {
  if (!config.sweep) throw ConfigError({"sweep: missing required field"});
  const auto& spec = *config.sweep;
  const auto state = config.state.make();
  std::vector<SweepRow> rows;
  rows.reserve(spec.steps);
  const GridRange grid{spec.start_deg, spec.stop_deg, spec.steps};
  for (std::size_t i = 0; i < spec.steps; ++i) {
    const double value = grid_value(grid, i);
    double alpha_deg = config.alpha_deg;
    double beta_deg = config.beta_deg;
    double& swept = spec.axis == SweepSpec::Axis::Alpha ? alpha_deg : beta_deg;
    double& other = spec.axis == SweepSpec::Axis::Alpha ? beta_deg : alpha_deg;
    swept = value;
    if (spec.link == SweepSpec::Link::Equal) other = value;
    if (spec.link == SweepSpec::Link::Opposite) other = -value;
    const auto settings = AnalyzerSettings::from_degrees(alpha_deg, beta_deg);
    std::vector<std::string> warnings;
    const auto joints = detail::rnl_label_joints(state, settings, warnings);
    rows.push_back({alpha_deg, beta_deg, correlation(joints.aa), correlation(joints.ab),
                    correlation(joints.bb), correlation(joints.ab)});
  }
  return rows;
}

inline Json simulate_json(const ExperimentConfig& config) {
  if (!config.montecarlo) throw ConfigError({"montecarlo: missing required field"});
  const auto report = predict(config.geometry, config.state.make(), config.settings());
  const auto n = config.montecarlo->pairs;
  const auto seed = config.montecarlo->seed;

  // one stream: the first N draws feed the RNL counts, the next N the QM ones
  const auto rnl_record = sample_pairs(report.rnl, n, seed);
  const auto qm_record = sample_pairs(report.qm, n, SplitMix64::advance_seed(seed, n));
  const auto rnl_estimate = estimate(rnl_record);
  const auto qm_estimate = estimate(qm_record);

  auto side = [](double analytic, const CountRecord& record, const EstimateReport& est) {
    return Json{{"analytic_E", analytic}, {"record", to_json(record)}, {"estimate", to_json(est)}};
  };
  return Json{
      {"label", to_string(report.label)},
      {"rnl", side(report.rnl_correlation, rnl_record, rnl_estimate)},
      {"qm", side(report.qm_correlation, qm_record, qm_estimate)},
      {"discrimination_sigma",
       discrimination_power(report.rnl_correlation, report.qm_correlation, n)}};
}

inline Json feasibility_json(const ExperimentConfig& config) {
  if (!config.feasibility) throw ConfigError({"feasibility: missing required field"});
  const auto& spec = *config.feasibility;
  Json rows = Json::array();
  for (const auto& row : feasibility_sweep(spec.v_mps, spec.l_m)) {
    rows.push_back(Json{{"V_mps", row.v_mps},
                        {"L_m", row.l_m},
                        {"dt_max_s", row.dt_max_s},
                        {"dt_safe_s", (1.0 - spec.margin) * row.dt_max_s}});
  }
  return Json{{"margin", spec.margin}, {"rows", rows}};
}

namespace detail {

inline bool format_supported(Command command, OutputFormat format) {
  switch (command) {
    case Command::Classify:
    case Command::Predict:
    case Command::Simulate:
      return format == OutputFormat::Json;
    case Command::Sweep:
      return format == OutputFormat::Csv || format == OutputFormat::Json;
    case Command::Feasibility:
      return format == OutputFormat::Csv || format == OutputFormat::Json;
  }
  return false;
}

inline OutputFormat default_format(Command command) {
  return (command == Command::Sweep || command == Command::Feasibility) ? OutputFormat::Csv
                                                                        : OutputFormat::Json;
}

}  // namespace detail

/// Runs one subcommand against a parsed config. Data goes to `data` only;
/// diagnostics go to `diag` only.
inline RunStatus run(Command command, const ExperimentConfig& config, std::ostream& data,
                     std::ostream& diag, std::optional<OutputFormat> format = {}) {
  const OutputFormat fmt = format.value_or(detail::default_format(command));
  try {
    if (!detail::format_supported(command, fmt)) {
      throw ConfigError({"format: not supported by this subcommand"});
    }
    switch (command) {
      case Command::Classify:
        data << classify_json(config).dump(2) << '\n';
        break;
      case Command::Predict:
        data << to_json(predict(config.geometry, config.state.make(), config.settings())).dump(2)
             << '\n';
        break;
      case Command::Sweep: {
        const auto rows = compute_sweep(config);
        if (fmt == OutputFormat::Csv) {
          write_sweep_csv(data, rows);
        } else {
          Json out = Json::array();
          for (const auto& row : rows) {
            out.push_back(Json{{"alpha_deg", row.alpha_deg},
                               {"beta_deg", row.beta_deg},
                               {"E_rnl", row.e_rnl},
                               {"E_qm", row.e_qm},
                               {"E_bb", row.e_bb},
                               {"E_ab", row.e_ab}});
          }
          data << out.dump(2) << '\n';
        }
        break;
      }
      case Command::Feasibility: {
        if (!config.feasibility) throw ConfigError({"feasibility: missing required field"});
        if (fmt == OutputFormat::Csv) {
          write_feasibility_csv(data,
                                feasibility_sweep(config.feasibility->v_mps,
                                                  config.feasibility->l_m));
        } else {
          data << feasibility_json(config).dump(2) << '\n';
        }
        break;
      }
      case Command::Simulate:
        data << simulate_json(config).dump(2) << '\n';
        break;
    }
    return RunStatus::Ok;
  } catch (const ConfigError& e) {
    diag << "error: " << e.what() << '\n';
    return RunStatus::ValidationFailure;
  } catch (const ValidationError& e) {
    diag << "error: " << e.what() << '\n';
    return RunStatus::ValidationFailure;
  } catch (const DomainError& e) {
    diag << "error: " << e.what() << '\n';
    return RunStatus::ValidationFailure;
  } catch (const UnsupportedError& e) {
    diag << "error: " << e.what() << '\n';
    return RunStatus::ValidationFailure;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return RunStatus::RuntimeFailure;
  }
}

}  // namespace rnl

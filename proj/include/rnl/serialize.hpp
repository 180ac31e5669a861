#pragma once

#include <charconv>
#include <cstdio>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "rnl/core.hpp"
#include "rnl/engine.hpp"
#include "rnl/sampling.hpp"
#include "rnl/timing.hpp"

namespace rnl {

using Json = nlohmann::ordered_json;

/// Shortest representation that round-trips the exact double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

/// Scientific notation with 17 significant digits, enough to pin any double.
inline std::string format_double_sci17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

inline Json to_json(const JointDistribution& j) {
  return Json{{"pp", j.pp}, {"pm", j.pm}, {"mp", j.mp}, {"mm", j.mm}};
}

inline JointDistribution joint_from_json(const Json& j) {
  return {j.at("pp").get<double>(), j.at("pm").get<double>(), j.at("mp").get<double>(),
          j.at("mm").get<double>()};
}

inline Json to_json(const CountRecord& record) {
  return Json{{"seed", record.seed},
              {"N", record.total},
              {"counts",
               Json{{"pp", record.pp}, {"pm", record.pm}, {"mp", record.mp}, {"mm", record.mm}}}};
}

inline CountRecord count_record_from_json(const Json& j) {
  const auto& counts = j.at("counts");
  CountRecord record{counts.at("pp").get<std::uint64_t>(), counts.at("pm").get<std::uint64_t>(),
                     counts.at("mp").get<std::uint64_t>(), counts.at("mm").get<std::uint64_t>(),
                     j.at("N").get<std::uint64_t>(), j.at("seed").get<std::uint64_t>()};
  if (record.sum() != record.total) {
    throw ValidationError("count record does not sum to N");
  }
  return record;
}

inline Json to_json(const EstimateReport& report) {
  return Json{{"E_hat", report.correlation_estimate},
              {"stderr", report.standard_error},
              {"frequencies", to_json(report.frequencies)}};
}

inline Json to_json(const PredictionReport& report) {
  auto side = [](const JointDistribution& j, double e) {
    Json out = to_json(j);
    out["E"] = e;
    return out;
  };
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
  }
  Json out{{"label", to_string(report.label)},
           {"rnl", side(report.rnl, report.rnl_correlation)},
           {"qm", side(report.qm, report.qm_correlation)},
           {"checks", checks}};
  if (!report.warnings.empty()) out["warnings"] = report.warnings;
  return out;
}

/// Pinned CSV table of the feasibility planner: header V_mps,L_m,dt_max_s,
/// every value in 17-significant-digit scientific notation.
inline void write_feasibility_csv(std::ostream& os, const std::vector<FeasibilityRow>& rows) {
  os << "V_mps,L_m,dt_max_s\n";
  for (const auto& row : rows) {
    os << format_double_sci17(row.v_mps) << ',' << format_double_sci17(row.l_m) << ','
       << format_double_sci17(row.dt_max_s) << '\n';
  }
}

struct SweepRow {
  double alpha_deg;
  double beta_deg;
  double e_rnl;
  double e_qm;
  double e_bb;
  double e_ab;
};

/// Pinned CSV table of the angle sweep; shortest round-trip numbers keep the
/// golden files stable.
inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "alpha_deg,beta_deg,E_rnl,E_qm,E_bb,E_ab\n";
  for (const auto& row : rows) {
    os << format_double(row.alpha_deg) << ',' << format_double(row.beta_deg) << ','
       << format_double(row.e_rnl) << ',' << format_double(row.e_qm) << ','
       << format_double(row.e_bb) << ',' << format_double(row.e_ab) << '\n';
  }
}

}  // namespace rnl

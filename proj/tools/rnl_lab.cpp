// rnl-lab: classify impact timings, compare the two predictions for a
// two-photon experiment with moving polarizing beam-splitters, sweep analyzer
// angles, plan feasible delays, and simulate coincidence counts.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rnl/rnl.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string format;
};

std::optional<rnl::OutputFormat> parse_format(const std::string& format) {
  if (format.empty()) return std::nullopt;
  if (format == "json") return rnl::OutputFormat::Json;
  return rnl::OutputFormat::Csv;
}

int run_command(rnl::Command command, const CommonOptions& options) {
  std::ifstream in(options.config_path);
  if (!in) {
    std::cerr << "error: cannot open config file " << options.config_path << '\n';
    return static_cast<int>(rnl::RunStatus::RuntimeFailure);
  }
  std::ostringstream text;
  text << in.rdbuf();

  rnl::ExperimentConfig config;
  try {
    config = rnl::parse_config(text.str());
  } catch (const rnl::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(rnl::RunStatus::ValidationFailure);
  }

  const auto format = parse_format(options.format);
  rnl::RunStatus status;
  if (options.out_path.empty()) {
    status = rnl::run(command, config, std::cout, std::cerr, format);
  } else {
    std::ofstream out(options.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output file " << options.out_path << '\n';
      return static_cast<int>(rnl::RunStatus::RuntimeFailure);
    }
    status = rnl::run(command, config, out, std::cerr, format);
  }
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Timing-dependent joint probabilities for two-photon experiments "
      "with moving polarizing beam-splitters"};
  app.require_subcommand(1);

  const std::pair<rnl::Command, std::pair<const char*, const char*>> commands[] = {
      {rnl::Command::Classify,
       {"classify", "Classify both impacts as before/non-before and print the gaps"}},
      {rnl::Command::Predict,
       {"predict", "Emit the RNL and QM joint distributions with consistency checks"}},
      {rnl::Command::Sweep, {"sweep", "Tabulate correlations over an angle grid"}},
      {rnl::Command::Feasibility,
       {"feasibility", "Tabulate the maximum delay V*L/c^2 over a (V, L) grid"}},
      {rnl::Command::Simulate,
       {"simulate", "Sample coincidence counts under both predictions"}},
  };

  int exit_code = 0;
  for (const auto& [command, names] : commands) {
    auto* sub = app.add_subcommand(names.first, names.second);
    auto options = std::make_shared<CommonOptions>();
    sub->add_option("--config", options->config_path, "Path to the experiment config (JSON)")
        ->required();
    sub->add_option("--out", options->out_path, "Write data output to this file");
    sub->add_option("--format", options->format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->callback([command, options, &exit_code] {
      exit_code = run_command(command, *options);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(rnl::RunStatus::ValidationFailure);
  }
  return exit_code;
}

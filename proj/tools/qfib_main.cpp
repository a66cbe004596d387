#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfib/runner.hpp"

namespace {

using nlohmann::json;

void write_output(const qfib::RunReport& report, const std::string& path,
                  const std::string& format) {
  const std::string text =
      format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qfib::ConfigError("cannot write output file '" + path + "'");
  out << text;
}

json parse_value(const std::string& s) {
  try {
    return json::parse(s);
  } catch (const json::parse_error&) {
    return json(s);  // bare strings are allowed
  }
}

int report_exit(const qfib::RunReport& report, bool strict) {
  if (report.all_pass) return 0;
  if (strict) {
    for (const auto& [name, ok] : report.verdicts) {
      if (!ok) std::cerr << "error: check '" << name << "' failed (--strict)\n";
    }
    return 2;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Fisher information broadcasting toolkit"};
  app.require_subcommand(1);

  std::string config_path, output_path, format = "json", vary;
  std::vector<std::string> values;
  long long seed = -1;
  int jobs = 0;
  bool strict = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
    cmd->add_option("--output", output_path, "output path ('-' for stdout)");
    cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", seed, "overrides the config seed");
    cmd->add_option("--jobs", jobs, "parallelism across grid points / sweep values");
    cmd->add_flag("--strict", strict, "check failures become process errors");
  };

  CLI::App* cmd_run = app.add_subcommand("run", "run the configured checks");
  add_common(cmd_run);

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "run once per parameter value");
  add_common(cmd_sweep);
  cmd_sweep->add_option("--vary", vary, "dotted config path, e.g. channel.n_parties")
      ->required();
  cmd_sweep->add_option("--values", values, "values to assign (JSON literals)")
      ->required();

  CLI::App* cmd_families = app.add_subcommand("list-families", "built-in state families");
  CLI::App* cmd_channels = app.add_subcommand("list-channels", "built-in channels");
  CLI::App* cmd_version = app.add_subcommand("version", "print toolkit version");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_version->parsed()) {
      std::cout << "qfib " << qfib::kVersion << "\n";
      return 0;
    }
    if (cmd_families->parsed()) {
      for (const auto& [name, desc] : qfib::list_families()) {
        std::cout << name << "  -  " << desc << "\n";
      }
      return 0;
    }
    if (cmd_channels->parsed()) {
      for (const auto& [name, desc] : qfib::list_channels()) {
        std::cout << name << "  -  " << desc << "\n";
      }
      return 0;
    }

    qfib::ExperimentConfig config = qfib::ExperimentConfig::from_file(config_path);
    if (seed >= 0) config.raw["seed"] = static_cast<std::uint64_t>(seed);
    if (jobs > 0) config.raw["jobs"] = jobs;

    if (cmd_run->parsed()) {
      const qfib::RunReport report = qfib::run(config);
      write_output(report, output_path, format);
      return report_exit(report, strict);
    }

    // sweep
    std::vector<json> parsed;
    for (const std::string& v : values) parsed.push_back(parse_value(v));
    const std::vector<qfib::RunReport> reports = qfib::sweep(config, vary, parsed);
    int exit_code = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      std::string path = output_path;
      if (!path.empty() && path != "-" && reports.size() > 1) {
        path += "." + std::to_string(i);
      }
      write_output(reports[i], path, format);
      exit_code = std::max(exit_code, report_exit(reports[i], strict));
    }
    return exit_code;
  } catch (const qfib::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

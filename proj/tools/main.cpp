// ontology-lab: batch front end for the deterministic-QM experiments.
//
//   ontology-lab run --config cfg.json [--out report.json] [--seed 42]
//   ontology-lab list [--json]
//
// Exit status: 0 success, 2 config error, 3 computation error. Failures print
// one JSON error record on stderr.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lab/experiments.hpp"

namespace {

using ontolab::lab::json;

constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;

int report_error(const std::string& code, const std::string& message, const json& extra = json::object()) {
  json record = {{"error", {{"code", code}, {"message", message}}}};
  for (const auto& [k, v] : extra.items()) record["error"][k] = v;
  std::cerr << record.dump() << '\n';
  return code == "ConfigInvalid" ? kExitConfig : kExitCompute;
}

void print_catalog_text() {
  for (const auto& e : ontolab::lab::catalog()) {
    std::cout << e.name << "  [" << e.topic << "]\n  " << e.description << '\n';
    for (const auto& p : e.params) {
      std::cout << "    " << p.name << " (" << ontolab::lab::to_string(p.type) << ")";
      if (!p.default_value.is_null()) std::cout << " = " << p.default_value.dump();
      std::cout << ": " << p.description << '\n';
    }
  }
}

int run(const std::string& config_path, const std::optional<std::string>& out, const std::optional<std::uint64_t>& seed) {
  using namespace ontolab::lab;
  json doc;
  {
    std::ifstream in(config_path);
    if (!in.good()) return report_error("ConfigInvalid", "cannot open config " + config_path, {{"key", "--config"}});
    try {
      in >> doc;
    } catch (const json::exception& e) {
      return report_error("ConfigInvalid", std::string("config is not valid JSON: ") + e.what(), {{"key", "$"}});
    }
  }

  RunConfig cfg;
  Report report;
  try {
    cfg = parse_config(doc, std::filesystem::path(config_path).parent_path());
    if (seed) cfg.seed = *seed;
    if (out) cfg.output_path = *out;
    report = run_experiment(cfg);
  } catch (const ConfigError& e) {
    return report_error("ConfigInvalid", e.what(), {{"key", e.key()}});
  } catch (const UpstreamError& e) {
    return report_error("UpstreamError", e.what(),
                        {{"experiment", e.experiment()}, {"cause", std::string(ontolab::to_string(e.cause()))}});
  } catch (const ontolab::Error& e) {
    return report_error(std::string(ontolab::to_string(e.code())), e.what());
  }

  std::ofstream file;
  if (cfg.output_path) {
    file.open(*cfg.output_path, std::ios::binary);
    if (!file.good()) return report_error("IoError", "cannot write " + *cfg.output_path);
  }
  std::ostream& sink = cfg.output_path ? static_cast<std::ostream&>(file) : std::cout;
  if (cfg.format == OutputFormat::kCsv) {
    write_csv(sink, report.table);
    // the table alone loses the residuals; keep the full report next to it
    if (cfg.output_path) std::cout << report.to_json().dump(2) << '\n';
  } else {
    sink << report.to_json().dump(2) << '\n';
  }
  if (!sink.good()) return report_error("IoError", "write failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic quantum mechanics laboratory"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run one experiment from a JSON config");
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  run_cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
  run_cmd->add_option("--out", out, "output path (overrides output.path)");
  run_cmd->add_option("--seed", seed, "random seed (overrides config seed)");

  auto* list_cmd = app.add_subcommand("list", "List experiments");
  bool as_json = false;
  list_cmd->add_flag("--json", as_json, "machine-readable catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (*list_cmd) {
    if (as_json) {
      std::cout << ontolab::lab::catalog_json().dump(2) << '\n';
    } else {
      print_catalog_text();
    }
    return 0;
  }
  return run(config_path, out, seed);
}

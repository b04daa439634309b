#pragma once

// Experiment configs: one JSON document
//   {"experiment": name, "params": {...}, "output": {"path", "format"}, "seed": n}
// validated against a per-experiment parameter schema.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ontolab/error.hpp"

namespace ontolab::lab {

using nlohmann::json;

/// ConfigInvalid carrying the dotted path of the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& message)
      : Error(ErrorCode::kConfigInvalid, key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Module failure wrapped with the experiment it happened in.
class UpstreamError : public Error {
 public:
  UpstreamError(std::string experiment, const Error& cause)
      : Error(ErrorCode::kUpstreamError, experiment + ": " + cause.what()),
        experiment_(std::move(experiment)),
        cause_(cause.code()) {}
  const std::string& experiment() const noexcept { return experiment_; }
  ErrorCode cause() const noexcept { return cause_; }

 private:
  std::string experiment_;
  ErrorCode cause_;
};

enum class ParamType { kInteger, kNumber, kString, kBoolean, kArray };

inline const char* to_string(ParamType t) {
  switch (t) {
    case ParamType::kInteger: return "integer";
    case ParamType::kNumber: return "number";
    case ParamType::kString: return "string";
    case ParamType::kBoolean: return "boolean";
    case ParamType::kArray: return "array";
  }
  return "unknown";
}

struct ParamSpec {
  std::string name;
  ParamType type = ParamType::kNumber;
  std::string description;
  json default_value;  // null means optional with no default
};

inline bool matches(ParamType t, const json& v) {
  switch (t) {
    case ParamType::kInteger: return v.is_number_integer();
    case ParamType::kNumber: return v.is_number();
    case ParamType::kString: return v.is_string();
    case ParamType::kBoolean: return v.is_boolean();
    case ParamType::kArray: return v.is_array();
  }
  return false;
}

/// Params after validation: every declared key with a default is present.
class Params {
 public:
  Params(json values, std::filesystem::path base_dir) : values_(std::move(values)), base_dir_(std::move(base_dir)) {}

  const json& raw() const { return values_; }
  bool has(const std::string& key) const { return values_.contains(key) && !values_.at(key).is_null(); }

  std::int64_t integer(const std::string& key) const { return at(key).get<std::int64_t>(); }
  double number(const std::string& key) const { return at(key).get<double>(); }
  bool boolean(const std::string& key) const { return at(key).get<bool>(); }
  std::string string(const std::string& key) const { return at(key).get<std::string>(); }
  const json& array(const std::string& key) const { return at(key); }

  std::vector<double> numbers(const std::string& key) const {
    std::vector<double> out;
    std::size_t i = 0;
    for (const auto& v : at(key)) {
      if (!v.is_number()) throw ConfigError(path(key, i), "expected a number");
      out.push_back(v.get<double>());
      ++i;
    }
    return out;
  }

  std::vector<std::int64_t> integers(const std::string& key) const {
    std::vector<std::int64_t> out;
    std::size_t i = 0;
    for (const auto& v : at(key)) {
      if (!v.is_number_integer()) throw ConfigError(path(key, i), "expected an integer");
      out.push_back(v.get<std::int64_t>());
      ++i;
    }
    return out;
  }

  /// Relative file parameters resolve against the config file's directory.
  std::string file(const std::string& key) const {
    std::filesystem::path p = string(key);
    if (p.is_relative()) p = base_dir_ / p;
    return p.string();
  }

  static std::string path(const std::string& key, std::size_t index) {
    return "params." + key + "[" + std::to_string(index) + "]";
  }

 private:
  const json& at(const std::string& key) const {
    if (!has(key)) throw ConfigError("params." + key, "missing required parameter");
    return values_.at(key);
  }

  json values_;
  std::filesystem::path base_dir_;
};

/// Checks names and types, fills defaults. Unknown keys are rejected by name.
inline Params validate_params(const std::vector<ParamSpec>& schema, const json& given, const std::filesystem::path& base) {
  if (!given.is_null() && !given.is_object()) throw ConfigError("params", "must be an object");
  json out = json::object();
  if (given.is_object()) {
    for (const auto& [key, value] : given.items()) {
      const ParamSpec* spec = nullptr;
      for (const auto& p : schema) {
        if (p.name == key) spec = &p;
      }
      if (spec == nullptr) throw ConfigError("params." + key, "unknown parameter");
      if (!matches(spec->type, value)) {
        throw ConfigError("params." + key, std::string("expected ") + to_string(spec->type));
      }
      out[key] = value;
    }
  }
  for (const auto& p : schema) {
    if (!out.contains(p.name) && !p.default_value.is_null()) out[p.name] = p.default_value;
  }
  return Params(std::move(out), base);
}

enum class OutputFormat { kJson, kCsv };

struct RunConfig {
  std::string experiment;
  json params = json::object();
  std::optional<std::string> output_path;
  OutputFormat format = OutputFormat::kJson;
  std::uint64_t seed = 0;
  std::filesystem::path base_dir = ".";
};

/// Structural parse of the config document; params are checked per experiment.
inline RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir = ".") {
  if (!doc.is_object()) throw ConfigError("$", "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "experiment" && key != "params" && key != "output" && key != "seed") {
      throw ConfigError(key, "unknown config key");
    }
  }
  RunConfig cfg;
  cfg.base_dir = base_dir;
  if (!doc.contains("experiment") || !doc.at("experiment").is_string()) {
    throw ConfigError("experiment", "missing or not a string");
  }
  cfg.experiment = doc.at("experiment").get<std::string>();
  if (doc.contains("params")) {
    if (!doc.at("params").is_object()) throw ConfigError("params", "must be an object");
    cfg.params = doc.at("params");
  }
  if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
      throw ConfigError("seed", "must be an unsigned integer");
    }
    cfg.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("output")) {
    const json& out = doc.at("output");
    if (!out.is_object()) throw ConfigError("output", "must be an object");
    for (const auto& [key, value] : out.items()) {
      if (key == "path") {
        if (!value.is_string()) throw ConfigError("output.path", "must be a string");
        cfg.output_path = value.get<std::string>();
      } else if (key == "format") {
        const std::string f = value.is_string() ? value.get<std::string>() : "";
        if (f == "json") {
          cfg.format = OutputFormat::kJson;
        } else if (f == "csv") {
          cfg.format = OutputFormat::kCsv;
        } else {
          throw ConfigError("output.format", "must be \"csv\" or \"json\"");
        }
      } else {
        throw ConfigError("output." + key, "unknown output key");
      }
    }
  }
  return cfg;
}

}  // namespace ontolab::lab

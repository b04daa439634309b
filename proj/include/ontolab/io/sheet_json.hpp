#pragma once

// Sheet-grid states as JSON:
//   {"nodes": [[kx, ky, kz, q], ...], "weights": [w, ...],
//    "amplitudes": [[re, im], ...]}
// Each node is a unit direction plus signed q; weights are the full
// quadrature measure (angular times dq) of that node.

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ontolab/error.hpp"
#include "ontolab/fermion_sheets.hpp"

namespace ontolab::io {

inline nlohmann::json samples_to_json(const std::vector<fermion::WaveSample>& samples) {
  nlohmann::json nodes = nlohmann::json::array(), weights = nlohmann::json::array(), amps = nlohmann::json::array();
  for (const auto& s : samples) {
    nodes.push_back({s.k.x(), s.k.y(), s.k.z(), s.q});
    weights.push_back(s.weight);
    amps.push_back({s.amplitude.real(), s.amplitude.imag()});
  }
  return {{"nodes", nodes}, {"weights", weights}, {"amplitudes", amps}};
}

inline std::vector<fermion::WaveSample> samples_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("nodes") && j.contains("weights") && j.contains("amplitudes"), ErrorCode::kIoError,
          "grid JSON needs nodes, weights and amplitudes");
  const auto& nodes = j.at("nodes");
  const auto& weights = j.at("weights");
  const auto& amps = j.at("amplitudes");
  require(nodes.is_array() && weights.is_array() && amps.is_array() && nodes.size() == weights.size() &&
              nodes.size() == amps.size(),
          ErrorCode::kIoError, "grid JSON arrays must have equal length");
  std::vector<fermion::WaveSample> out;
  out.reserve(nodes.size());
  try {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      require(n.is_array() && n.size() == 4, ErrorCode::kIoError, "grid node " + std::to_string(i) + " is not [kx, ky, kz, q]");
      require(amps[i].is_array() && amps[i].size() == 2, ErrorCode::kIoError,
              "grid amplitude " + std::to_string(i) + " is not [re, im]");
      fermion::WaveSample s;
      s.k = {n[0].get<double>(), n[1].get<double>(), n[2].get<double>()};
      s.q = n[3].get<double>();
      s.weight = weights[i].get<double>();
      s.amplitude = {amps[i][0].get<double>(), amps[i][1].get<double>()};
      require(std::abs(s.k.norm() - 1.0) < 1e-9, ErrorCode::kInvalidParameter,
              "grid node " + std::to_string(i) + " direction is not a unit vector");
      require(s.q != 0.0 && std::isfinite(s.q), ErrorCode::kInvalidParameter,
              "grid node " + std::to_string(i) + " has q = 0");
      require(s.weight >= 0.0, ErrorCode::kInvalidParameter, "grid weights must be nonnegative");
      out.push_back(s);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kIoError, std::string("grid JSON: ") + e.what());
  }
  return out;
}

inline std::vector<fermion::WaveSample> load_samples(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::kIoError, "cannot open grid file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kIoError, "grid file " + path + " is not valid JSON: " + e.what());
  }
  return samples_from_json(j);
}

}  // namespace ontolab::io

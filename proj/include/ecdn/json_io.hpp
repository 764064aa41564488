// Copyright 2026 The ecdn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON file formats.
//
//   matrix       [[z, z, ...], ...]   rows of entries, z = [re, im] or a real
//   channel      {"in_dim": n, "out_dim": m, "kraus": [matrix, ...]}
//   hamiltonian  {"dim": n, "eigenvalues": [...], "eigenbasis": matrix}
//                (eigenbasis optional, columns are eigenvectors, default I)
//   ensemble     {"probs": [...], "states": [matrix, ...]}

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ecdn/channel.hpp"
#include "ecdn/info.hpp"
#include "ecdn/states.hpp"

namespace ecdn::io {

using Json = nlohmann::json;

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ValidationError(what + ": expected a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError(what + ": row " + std::to_string(r) + " has the wrong length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& z = row[static_cast<std::size_t>(c)];
      if (z.is_number()) {
        m(r, c) = z.get<double>();
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      } else {
        throw ValidationError(what + ": entry (" + std::to_string(r) + "," + std::to_string(c) +
                              ") is not a number or [re, im] pair");
      }
    }
  }
  require_finite(m, what.c_str());
  return m;
}

inline std::size_t count_field(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    throw ValidationError(what + ": missing or invalid \"" + key + "\"");
  }
  return j[key].get<std::size_t>();
}

inline Json channel_to_json(const Channel& phi) {
  Json kraus = Json::array();
  for (const auto& k : phi.kraus()) kraus.push_back(matrix_to_json(k));
  return {{"in_dim", phi.in_dim()}, {"out_dim", phi.out_dim()}, {"kraus", std::move(kraus)}};
}

inline Channel channel_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("channel: expected an object");
  const std::size_t in = count_field(j, "in_dim", "channel");
  const std::size_t out = count_field(j, "out_dim", "channel");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
    throw ValidationError("channel: missing or empty \"kraus\"");
  }
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : j["kraus"]) {
    ComplexMatrix m = matrix_from_json(k, "channel Kraus operator");
    if (static_cast<std::size_t>(m.rows()) != out || static_cast<std::size_t>(m.cols()) != in) {
      throw ValidationError("channel: Kraus operator is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected out_dim x in_dim = " + std::to_string(out) +
                            "x" + std::to_string(in));
    }
    kraus.push_back(std::move(m));
  }
  return Channel(std::move(kraus));
}

inline Json hamiltonian_to_json(const Hamiltonian& h) {
  std::vector<double> e(h.eigenvalues().data(), h.eigenvalues().data() + h.eigenvalues().size());
  return {{"dim", h.dim()}, {"eigenvalues", e}, {"eigenbasis", matrix_to_json(h.eigenbasis())}};
}

inline Hamiltonian hamiltonian_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("hamiltonian: expected an object");
  const std::size_t d = count_field(j, "dim", "hamiltonian");
  if (!j.contains("eigenvalues") || !j["eigenvalues"].is_array()) {
    throw ValidationError("hamiltonian: missing \"eigenvalues\"");
  }
  std::vector<double> e;
  for (const auto& v : j["eigenvalues"]) {
    if (!v.is_number()) throw ValidationError("hamiltonian: eigenvalues must be numbers");
    e.push_back(v.get<double>());
  }
  if (e.size() != d) throw ValidationError("hamiltonian: \"eigenvalues\" length differs from \"dim\"");
  if (j.contains("eigenbasis") && !j["eigenbasis"].is_null()) {
    return Hamiltonian(std::move(e), matrix_from_json(j["eigenbasis"], "hamiltonian eigenbasis"));
  }
  return Hamiltonian::diagonal(std::move(e));
}

inline Json ensemble_to_json(const Ensemble& mu) {
  Json states = Json::array();
  for (const auto& s : mu.states()) states.push_back(matrix_to_json(s.matrix()));
  return {{"probs", mu.probs()}, {"states", std::move(states)}};
}

inline Ensemble ensemble_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("probs") || !j.contains("states")) {
    throw ValidationError("ensemble: expected {\"probs\": [...], \"states\": [...]}");
  }
  std::vector<double> probs;
  for (const auto& p : j["probs"]) {
    if (!p.is_number()) throw ValidationError("ensemble: probabilities must be numbers");
    probs.push_back(p.get<double>());
  }
  std::vector<DensityOperator> states;
  for (const auto& s : j["states"]) states.emplace_back(matrix_from_json(s, "ensemble state"));
  return Ensemble(std::move(probs), std::move(states));
}

inline Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(source + ": malformed JSON (" + e.what() + ")");
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

}  // namespace ecdn::io

// Copyright 2026 The zenogate Authors
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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zenogate/model.hpp"

namespace zenogate {

/// Model parameters as read from a config file or assembled by the CLI.
/// Everything is in units of g; kappa/gamma apply uniformly unless g_data
/// gives per-mode values.
struct ModelConfig {
  int n_qubits = 3;
  int n_max = 1;
  double omega = 0.1;
  double delta = 1.0;
  double g_central = 1.0;
  std::vector<double> g_data;  // empty -> all equal to g_central
  double kappa = 0.0;
  double gamma = 0.0;

  SystemLayout layout() const { return SystemLayout(n_qubits, n_max); }

  HamiltonianSpec hamiltonian_spec() const {
    SystemLayout l = layout();
    std::vector<double> gd = g_data;
    if (gd.empty()) gd.assign(l.n_modes(), g_central);
    if (static_cast<int>(gd.size()) != l.n_modes())
      throw std::invalid_argument("ModelConfig: g_data length != n_qubits - 1");
    return HamiltonianSpec(l, PulseParams(omega, delta), Couplings(std::move(gd), g_central));
  }

  DecoherenceParams decoherence() const {
    return DecoherenceParams::uniform(layout(), kappa, gamma);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<double> parse_list(const std::string& v) {
  std::string s = v;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream is(s);
  std::vector<double> out;
  double x;
  while (is >> x) out.push_back(x);
  return out;
}

}  // namespace detail

/// Parses "key = value" lines; '#' starts a comment. Recognized keys:
/// n_qubits, n_max, omega, delta, g_central, g_data (list), kappa, gamma.
/// `seen` (optional) collects the keys the stream actually provided.
inline ModelConfig parse_model_config(std::istream& in, ModelConfig base = {},
                                      std::vector<std::string>* seen = nullptr) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (seen) seen->push_back(key);
    if (key == "n_qubits")
      base.n_qubits = std::stoi(val);
    else if (key == "n_max")
      base.n_max = std::stoi(val);
    else if (key == "omega")
      base.omega = std::stod(val);
    else if (key == "delta")
      base.delta = std::stod(val);
    else if (key == "g_central")
      base.g_central = std::stod(val);
    else if (key == "g_data")
      base.g_data = detail::parse_list(val);
    else if (key == "kappa")
      base.kappa = std::stod(val);
    else if (key == "gamma")
      base.gamma = std::stod(val);
    else
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" +
                                  key + "'");
  }
  return base;
}

inline ModelConfig load_model_config(const std::string& path, ModelConfig base = {},
                                     std::vector<std::string>* seen = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_model_config(in, base, seen);
}

}  // namespace zenogate

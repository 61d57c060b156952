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

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "zenogate/operators.hpp"

namespace zenogate {

/// Classical drive on the central qudit: Rabi frequency and detuning, both
/// in units of the reference coupling g. The drive detuning and the
/// resonator detuning are one and the same parameter.
struct PulseParams {
  double omega;
  double delta;

  PulseParams(double omega_, double delta_) : omega(omega_), delta(delta_) {
    if (!(std::isfinite(omega) && std::isfinite(delta)))
      throw std::invalid_argument("PulseParams: non-finite value");
    if (omega < 0) throw std::invalid_argument("PulseParams: omega must be >= 0");
  }
};

/// Qudit-resonator couplings in units of g: one g_i per data qudit (to its
/// own mode) and one g_A for the central qudit (to every mode).
struct Couplings {
  std::vector<double> g_data;
  double g_central;

  Couplings(std::vector<double> g_data_, double g_central_)
      : g_data(std::move(g_data_)), g_central(g_central_) {
    for (double g : g_data)
      if (!std::isfinite(g)) throw std::invalid_argument("Couplings: non-finite g_data");
    if (!std::isfinite(g_central)) throw std::invalid_argument("Couplings: non-finite g_central");
  }

  static Couplings uniform(const SystemLayout& layout, double g = 1.0) {
    return Couplings(std::vector<double>(layout.n_modes(), g), g);
  }

  /// Data-qudit couplings shifted to g + dg_i, central coupling left at g.
  static Couplings mismatched(const SystemLayout& layout, std::span<const double> dg,
                              double g = 1.0) {
    std::vector<double> gd(layout.n_modes(), g);
    for (std::size_t i = 0; i < dg.size() && i < gd.size(); ++i) gd[i] = g + dg[i];
    return Couplings(std::move(gd), g);
  }
};

/// Dissipation rates: photon decay kappa_i per mode and relaxation rates
/// gamma keyed by (qudit site, target level) for the decay paths
/// |e> -> |g>, |s>, |f| on every qudit.
struct DecoherenceParams {
  std::vector<double> kappa;
  std::map<std::pair<int, QuditLevel>, double> gamma;

  static constexpr QuditLevel kTargets[3] = {QuditLevel::g, QuditLevel::s, QuditLevel::f};

  static DecoherenceParams uniform(const SystemLayout& layout, double kappa_rate,
                                   double gamma_rate) {
    DecoherenceParams p;
    p.kappa.assign(layout.n_modes(), kappa_rate);
    for (int site = 0; site < layout.n_qubits; ++site)
      for (QuditLevel n : kTargets) p.gamma[{site, n}] = gamma_rate;
    p.validate();
    return p;
  }

  void validate() const {
    for (double k : kappa)
      if (!(k >= 0)) throw std::invalid_argument("DecoherenceParams: kappa must be >= 0");
    for (const auto& [key, g] : gamma)
      if (!(g >= 0)) throw std::invalid_argument("DecoherenceParams: gamma must be >= 0");
  }

  bool any_nonzero() const {
    for (double k : kappa)
      if (k > 0) return true;
    for (const auto& [key, g] : gamma)
      if (g > 0) return true;
    return false;
  }
};

/// Everything needed to build the coherent part of the model.
struct HamiltonianSpec {
  SystemLayout layout;
  PulseParams pulse;
  Couplings couplings;

  HamiltonianSpec(SystemLayout layout_, PulseParams pulse_, Couplings couplings_)
      : layout(layout_), pulse(pulse_), couplings(std::move(couplings_)) {
    if (static_cast<int>(couplings.g_data.size()) != layout.n_modes())
      throw std::invalid_argument("HamiltonianSpec: g_data length != number of modes");
  }

  static HamiltonianSpec uniform(int n_qubits, double omega, double delta, double g = 1.0) {
    SystemLayout layout(n_qubits);
    return HamiltonianSpec(layout, PulseParams(omega, delta), Couplings::uniform(layout, g));
  }
};

/// Detuning on every |e> population plus the classical drive
/// Omega (|s_A><e_A| + h.c.).
inline std::vector<OperatorTerm> drive_terms(const HamiltonianSpec& spec) {
  std::vector<OperatorTerm> ts;
  const int A = spec.layout.central_site();
  if (spec.pulse.delta != 0) {
    for (int i = 0; i < spec.layout.n_qubits; ++i)
      ts.emplace_back(spec.pulse.delta,
                      std::vector<SiteAction>{QuditTransition{i, QuditLevel::e, QuditLevel::e}});
  }
  if (spec.pulse.omega != 0)
    ts.emplace_back(spec.pulse.omega,
                    std::vector<SiteAction>{QuditTransition{A, QuditLevel::s, QuditLevel::e}},
                    /*add_hc=*/true);
  return ts;
}

/// Excitation exchange with the resonators: each data qudit i talks to its
/// own mode i, the central qudit talks to every mode.
inline std::vector<OperatorTerm> exchange_terms(const HamiltonianSpec& spec) {
  std::vector<OperatorTerm> ts;
  const int A = spec.layout.central_site();
  for (int i = 0; i < spec.layout.n_modes(); ++i) {
    if (spec.couplings.g_data[i] != 0)
      ts.emplace_back(spec.couplings.g_data[i],
                      std::vector<SiteAction>{ModeAction{i, /*raise=*/true},
                                              QuditTransition{i, QuditLevel::g, QuditLevel::e}},
                      /*add_hc=*/true);
    if (spec.couplings.g_central != 0)
      ts.emplace_back(spec.couplings.g_central,
                      std::vector<SiteAction>{ModeAction{i, /*raise=*/true},
                                              QuditTransition{A, QuditLevel::g, QuditLevel::e}},
                      /*add_hc=*/true);
  }
  return ts;
}

inline std::vector<OperatorTerm> hamiltonian_terms(const HamiltonianSpec& spec) {
  std::vector<OperatorTerm> ts = drive_terms(spec);
  auto ex = exchange_terms(spec);
  ts.insert(ts.end(), ex.begin(), ex.end());
  return ts;
}

inline OperatorMatrix drive_hamiltonian(const HamiltonianSpec& spec, const SubspaceBasis& basis) {
  return build_operator(drive_terms(spec), basis);
}

inline OperatorMatrix exchange_hamiltonian(const HamiltonianSpec& spec,
                                           const SubspaceBasis& basis) {
  return build_operator(exchange_terms(spec), basis);
}

inline OperatorMatrix total_hamiltonian(const HamiltonianSpec& spec, const SubspaceBasis& basis) {
  return build_operator(hamiltonian_terms(spec), basis);
}

/// One collapse channel of the master equation.
struct JumpChannel {
  double rate;
  OperatorMatrix op;
  std::string name;
};

/// The jump generators without their rates; these belong in the closure
/// generator set whenever dissipation is on (jumps only flow downward, so
/// no h.c. partners are added here).
inline std::vector<OperatorTerm> jump_terms(const DecoherenceParams& params,
                                            const SystemLayout& layout) {
  params.validate();
  if (static_cast<int>(params.kappa.size()) != layout.n_modes())
    throw std::invalid_argument("jump_terms: kappa length != number of modes");
  std::vector<OperatorTerm> ts;
  for (int i = 0; i < layout.n_modes(); ++i)
    ts.emplace_back(1.0, std::vector<SiteAction>{ModeAction{i, /*raise=*/false}});
  for (int site = 0; site < layout.n_qubits; ++site)
    for (QuditLevel n : DecoherenceParams::kTargets)
      ts.emplace_back(1.0, std::vector<SiteAction>{QuditTransition{site, n, QuditLevel::e}});
  return ts;
}

/// All collapse channels in a fixed order: mode decay a_1..a_{N-1} first,
/// then per qudit the relaxation paths |e> -> |g>, |s>, |f>. For an N-qudit
/// system that is (N-1) mode channels plus 3N qudit channels.
inline std::vector<JumpChannel> build_jump_operators(const DecoherenceParams& params,
                                                     const SystemLayout& layout,
                                                     const SubspaceBasis& basis) {
  params.validate();
  if (static_cast<int>(params.kappa.size()) != layout.n_modes())
    throw std::invalid_argument("build_jump_operators: kappa length != number of modes");
  std::vector<JumpChannel> channels;
  for (int i = 0; i < layout.n_modes(); ++i) {
    OperatorTerm t(1.0, {ModeAction{i, /*raise=*/false}});
    channels.push_back({params.kappa[i], build_operator(std::span(&t, 1), basis),
                        "a_" + std::to_string(i + 1)});
  }
  for (int site = 0; site < layout.n_qubits; ++site) {
    const std::string tag =
        site == layout.central_site() ? std::string("A") : std::to_string(site + 1);
    for (QuditLevel n : DecoherenceParams::kTargets) {
      auto it = params.gamma.find({site, n});
      const double rate = it == params.gamma.end() ? 0.0 : it->second;
      OperatorTerm t(1.0, {QuditTransition{site, n, QuditLevel::e}});
      channels.push_back({rate, build_operator(std::span(&t, 1), basis),
                          std::string("sigma_") + to_char(n) + "," + tag});
    }
  }
  return channels;
}

/// Reachable subspace for a set of seeds under the model's generators,
/// optionally closed under the jump generators too.
inline SubspaceBasis sector_basis(const HamiltonianSpec& spec, std::span<const BasisState> seeds,
                                  const DecoherenceParams* decoherence = nullptr,
                                  int size_cap = 4096) {
  std::vector<OperatorTerm> gens = hamiltonian_terms(spec);
  if (decoherence != nullptr) {
    auto js = jump_terms(*decoherence, spec.layout);
    gens.insert(gens.end(), js.begin(), js.end());
  }
  return reachable_basis(spec.layout, seeds, gens, size_cap);
}

inline SubspaceBasis sector_basis(const HamiltonianSpec& spec, const BasisState& seed,
                                  const DecoherenceParams* decoherence = nullptr,
                                  int size_cap = 4096) {
  return sector_basis(spec, std::span(&seed, 1), decoherence, size_cap);
}

}  // namespace zenogate

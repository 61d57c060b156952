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
#include <numbers>
#include <vector>

#include "zenogate/dynamics.hpp"

namespace zenogate {

/// Asymmetric computational encoding: data qudits store logical {0,1} in
/// {|f>,|g>}, the central qudit in {|f>,|s>}, all modes in vacuum. Codes
/// enumerate data qudits most-significant-first with the central qudit as
/// the least significant bit.
class ComputationalEncoding {
 public:
  explicit ComputationalEncoding(SystemLayout layout) : layout_(layout) {}

  const SystemLayout& layout() const { return layout_; }
  int n_states() const { return 1 << layout_.n_qubits; }

  BasisState state(int code) const {
    if (code < 0 || code >= n_states())
      throw std::out_of_range("ComputationalEncoding: code out of range");
    const int n = layout_.n_qubits;
    std::vector<QuditLevel> lv(n);
    for (int i = 0; i < n - 1; ++i) {
      const bool bit = (code >> (n - 1 - i)) & 1;
      lv[i] = bit ? QuditLevel::g : QuditLevel::f;
    }
    lv[n - 1] = (code & 1) ? QuditLevel::s : QuditLevel::f;
    return BasisState(std::move(lv), std::vector<int>(layout_.n_modes(), 0));
  }

  /// Inverse of state(); throws for non-computational configurations.
  int code(const BasisState& s) const {
    if (!is_computational(s, layout_))
      throw std::invalid_argument("ComputationalEncoding: '" + s.label() +
                                  "' is not a computational state");
    const int n = layout_.n_qubits;
    int c = 0;
    for (int i = 0; i < n - 1; ++i)
      if (s.level(i) == QuditLevel::g) c |= 1 << (n - 1 - i);
    if (s.level(n - 1) == QuditLevel::s) c |= 1;
    return c;
  }

  std::vector<BasisState> all_states() const {
    std::vector<BasisState> out;
    out.reserve(n_states());
    for (int c = 0; c < n_states(); ++c) out.push_back(state(c));
    return out;
  }

  static bool is_computational(const BasisState& s, const SystemLayout& layout) {
    if (!s.valid_for(layout)) return false;
    if (s.total_photons() != 0) return false;
    const int n = layout.n_qubits;
    for (int i = 0; i < n - 1; ++i)
      if (s.level(i) != QuditLevel::f && s.level(i) != QuditLevel::g) return false;
    return s.level(n - 1) == QuditLevel::f || s.level(n - 1) == QuditLevel::s;
  }

 private:
  SystemLayout layout_;
};

/// The controlled-phase target: e^{i delta} on the flagged computational
/// state g..g s_A (all data qudits in |g>, central qudit in |s>), identity
/// elsewhere.
struct GateSpec {
  int n_qubits;
  double phase;

  GateSpec(int n_qubits_, double phase_ = std::numbers::pi) : n_qubits(n_qubits_), phase(phase_) {
    if (n_qubits < 2) throw std::invalid_argument("GateSpec: need n_qubits >= 2");
    if (!(phase > -std::numbers::pi && phase <= std::numbers::pi + 1e-12))
      throw std::invalid_argument("GateSpec: phase must lie in (-pi, pi]");
  }

  BasisState flagged_state(const SystemLayout& layout) const {
    if (layout.n_qubits != n_qubits) throw std::invalid_argument("GateSpec: layout mismatch");
    std::vector<QuditLevel> lv(n_qubits, QuditLevel::g);
    lv.back() = QuditLevel::s;
    return BasisState(std::move(lv), std::vector<int>(layout.n_modes(), 0));
  }
};

/// Normalized amplitudes over the computational codes.
class InputState {
 public:
  InputState(ComputationalEncoding enc, Eigen::VectorXcd amplitudes)
      : enc_(enc), c_(std::move(amplitudes)) {
    if (c_.size() != enc_.n_states())
      throw std::invalid_argument("InputState: amplitude count != 2^N");
    if (std::abs(c_.squaredNorm() - 1.0) > 1e-12)
      throw std::invalid_argument("InputState: amplitudes must be normalized to 1e-12");
  }

  static InputState from_components(const ComputationalEncoding& enc,
                                    const std::vector<std::pair<BasisState, Complex>>& parts) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(enc.n_states());
    for (const auto& [st, a] : parts) c(enc.code(st)) += a;
    return InputState(enc, std::move(c));
  }

  /// The graded three-qubit superposition used by the fidelity sweeps:
  /// amplitude sqrt(k)/6 on the k-th state of the sequence
  /// fff, fgf, ffs, fgs, gff, ggf, gfs, ggs (k = 1..8).
  static InputState graded_three_qubit(const ComputationalEncoding& enc) {
    if (enc.layout().n_qubits != 3)
      throw std::invalid_argument("InputState::graded_three_qubit: needs n_qubits == 3");
    const char* order[8] = {"fff", "fgf", "ffs", "fgs", "gff", "ggf", "gfs", "ggs"};
    std::vector<std::pair<BasisState, Complex>> parts;
    for (int k = 0; k < 8; ++k)
      parts.emplace_back(BasisState::vacuum(enc.layout(), order[k]), std::sqrt(k + 1.0) / 6.0);
    return from_components(enc, parts);
  }

  const ComputationalEncoding& encoding() const { return enc_; }
  const Eigen::VectorXcd& amplitudes() const { return c_; }
  Complex amplitude(int code) const { return c_(code); }

  /// Embeds the input into a subspace basis containing the computational
  /// states (missing states with nonzero amplitude are an error).
  StateVector embed(BasisPtr basis) const {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(basis->size());
    for (int code = 0; code < enc_.n_states(); ++code) {
      if (std::abs(c_(code)) == 0.0) continue;
      a(basis->index_of(enc_.state(code))) = c_(code);
    }
    return StateVector(std::move(basis), std::move(a));
  }

 private:
  ComputationalEncoding enc_;
  Eigen::VectorXcd c_;
};

/// Ideal gate unitary on a subspace basis: identity everywhere except the
/// flagged state, which picks up e^{i delta}. All 2^N computational states
/// must be present in the basis.
inline OperatorMatrix target_unitary(const GateSpec& spec, const SubspaceBasis& basis) {
  const ComputationalEncoding enc(basis.layout());
  for (int code = 0; code < enc.n_states(); ++code) {
    const BasisState s = enc.state(code);
    if (!basis.contains(s))
      throw std::invalid_argument("target_unitary: computational state '" + s.label() +
                                  "' missing from basis");
  }
  const int flagged = basis.index_of(spec.flagged_state(basis.layout()));
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int i = 0; i < basis.size(); ++i)
    trip.emplace_back(i, i, i == flagged ? std::exp(Complex(0, spec.phase)) : Complex(1.0));
  SparseMatrixXcd m(basis.size(), basis.size());
  m.setFromTriplets(trip.begin(), trip.end());
  return OperatorMatrix::from_sparse(std::move(m));
}

/// Ideal image U_p |Psi(0)> embedded in a subspace basis.
inline StateVector ideal_image(const InputState& input, const GateSpec& spec, BasisPtr basis) {
  StateVector psi = input.embed(basis);
  Eigen::VectorXcd a = psi.amplitudes();
  const BasisState flagged = spec.flagged_state(basis->layout());
  a(basis->index_of(flagged)) *= std::exp(Complex(0, spec.phase));
  return StateVector(std::move(basis), std::move(a));
}

/// F = |<psi(tau)| U_p |Psi(0)>|^2, phase-sensitive by construction.
inline double pure_fidelity(const StateVector& final_state, const InputState& input,
                            const GateSpec& spec) {
  const StateVector image = ideal_image(input, spec, final_state.basis());
  return std::norm(overlap(image, final_state));
}

/// Reduced density matrix over the qudits: traces out every resonator mode.
/// The result lives on a basis of photonless representatives of the qudit
/// level patterns, ordered by first appearance in the source basis.
inline DensityMatrix partial_trace_modes(const DensityMatrix& rho) {
  const SubspaceBasis& src = *rho.basis();
  const SystemLayout& layout = src.layout();
  const std::vector<int> vacuum(layout.n_modes(), 0);

  std::vector<BasisState> patterns;
  std::map<std::vector<QuditLevel>, int> pattern_index;
  std::vector<int> pattern_of(src.size());
  for (int i = 0; i < src.size(); ++i) {
    const auto& lv = src.state(i).levels();
    auto [it, inserted] = pattern_index.emplace(lv, static_cast<int>(patterns.size()));
    if (inserted) patterns.emplace_back(lv, vacuum);
    pattern_of[i] = it->second;
  }

  const int dq = static_cast<int>(patterns.size());
  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(dq, dq);
  for (int i = 0; i < src.size(); ++i)
    for (int j = 0; j < src.size(); ++j)
      if (src.state(i).photons() == src.state(j).photons())
        reduced(pattern_of[i], pattern_of[j]) += rho.matrix()(i, j);

  auto basis = std::make_shared<const SubspaceBasis>(layout, std::move(patterns));
  return DensityMatrix(std::move(basis), std::move(reduced));
}

/// F = <Psi(0)| U_p^dag rho' U_p |Psi(0)> on the mode-traced state.
inline double mixed_fidelity(const DensityMatrix& rho_reduced, const InputState& input,
                             const GateSpec& spec) {
  const StateVector image = ideal_image(input, spec, rho_reduced.basis());
  const Complex f = image.amplitudes().dot(rho_reduced.matrix() * image.amplitudes());
  return f.real();
}

/// Phase picked up by a computational input that returns to itself:
/// arg <input | psi(tau)>.
inline double acquired_phase(const StateVector& final_state, const BasisState& input) {
  return std::arg(final_state.amplitude(input));
}

}  // namespace zenogate

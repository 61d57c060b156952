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
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "zenogate/model.hpp"

namespace zenogate {

namespace detail {
inline void warn(const std::string& msg) { std::cerr << "zenogate: warning: " << msg << "\n"; }
}  // namespace detail

/// The strong-coupling condition behind the effective dynamics. Above
/// omega/g = 0.2 the plane leakage (which scales as (omega/g)^2) passes the
/// few-percent mark and the effective picture degrades.
inline bool rwa_satisfied(double omega, double g_ref = 1.0) { return omega <= 0.2 * g_ref; }

/// One eigenvalue group of the exchange Hamiltonian: the (possibly
/// degenerate) eigenvalue, an orthonormal set of eigenvectors, and the
/// projector they span.
struct EigenGroup {
  double value;
  Eigen::MatrixXcd vectors;
  Eigen::MatrixXcd projector;
};

/// Spectral decomposition of the exchange Hamiltonian on an invariant
/// subspace, grouped by eigenvalue. The zero group is the Zeno block the
/// slow drive dynamics is confined to.
struct ZenoSubspace {
  BasisPtr basis;
  std::vector<double> eigenvalues;  // ascending, with multiplicity
  Eigen::MatrixXcd eigenvectors;    // columns aligned with eigenvalues
  std::vector<EigenGroup> groups;   // ascending by value
  std::optional<std::size_t> zero_group;

  bool has_dark_block() const { return zero_group.has_value(); }

  const EigenGroup& dark_block() const {
    if (!zero_group) throw std::logic_error("ZenoSubspace: no zero-eigenvalue block");
    return groups[*zero_group];
  }

  /// Projector onto the zero-eigenvalue block.
  OperatorMatrix dark_projector() const {
    return OperatorMatrix::from_sparse(dark_block().projector.sparseView(1.0, 1e-15));
  }
};

/// Dense Hermitian eigendecomposition of the exchange Hamiltonian with
/// eigenvalues grouped at tolerance `group_tol` (units of g). Throws if the
/// operator is not flagged Hermitian.
inline ZenoSubspace diagonalize_exchange(BasisPtr basis, const OperatorMatrix& h_exchange,
                                         double group_tol = 1e-9) {
  if (!h_exchange.hermitian())
    throw std::invalid_argument("diagonalize_exchange: operator is not Hermitian");
  if (h_exchange.dim() != basis->size())
    throw std::invalid_argument("diagonalize_exchange: dimension mismatch with basis");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h_exchange.dense());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("diagonalize_exchange: eigensolver failed");

  ZenoSubspace z;
  z.basis = std::move(basis);
  z.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  z.eigenvectors = es.eigenvectors();

  const int dim = static_cast<int>(z.eigenvalues.size());
  int k = 0;
  while (k < dim) {
    int j = k;
    while (j + 1 < dim && z.eigenvalues[j + 1] - z.eigenvalues[k] <= group_tol) ++j;
    EigenGroup grp;
    grp.vectors = z.eigenvectors.middleCols(k, j - k + 1);
    double sum = 0;
    for (int i = k; i <= j; ++i) sum += z.eigenvalues[i];
    grp.value = sum / double(j - k + 1);
    grp.projector = grp.vectors * grp.vectors.adjoint();
    if (std::abs(grp.value) <= group_tol) z.zero_group = z.groups.size();
    z.groups.push_back(std::move(grp));
    k = j + 1;
  }
  return z;
}

// ---------------------------------------------------------------------------
// Closed-form eigensystem of the exchange Hamiltonian on the three seed
// sectors (uniform couplings g). The data-qudit pattern of the seed decides
// the sector: all data qudits idle in |f>, exactly one in |g>, or all in |g>.
// ---------------------------------------------------------------------------

enum class SectorKind { idle, single, full };

inline BasisState sector_seed(SectorKind kind, const SystemLayout& layout, int active_site = -1) {
  std::vector<QuditLevel> lv(layout.n_qubits, QuditLevel::f);
  lv.back() = QuditLevel::s;
  switch (kind) {
    case SectorKind::idle:
      break;
    case SectorKind::single:
      if (active_site < 0) active_site = layout.n_modes() - 1;
      lv.at(active_site) = QuditLevel::g;
      break;
    case SectorKind::full:
      for (int i = 0; i < layout.n_modes(); ++i) lv[i] = QuditLevel::g;
      break;
  }
  return BasisState(std::move(lv), std::vector<int>(layout.n_modes(), 0));
}

/// Full eigenvalue multiset (units of g, ascending) of the exchange
/// Hamiltonian on a seed sector, for any N >= 2 with uniform couplings.
inline std::vector<double> analytic_sector_spectrum(SectorKind kind, const SystemLayout& layout) {
  const int n = layout.n_qubits;
  std::vector<double> vals;
  switch (kind) {
    case SectorKind::idle: {
      // dim N+1: seed, e_A, one photon per mode
      vals.push_back(-std::sqrt(double(n - 1)));
      vals.insert(vals.end(), n - 1, 0.0);
      vals.push_back(std::sqrt(double(n - 1)));
      break;
    }
    case SectorKind::single: {
      // dim N+2; the two +- pairs come from the singular values of the
      // bipartite block between {e_A, e_active} and the photon states
      const double disc = std::sqrt(double(n) * n - 4.0 * n + 8.0);
      const double lp = std::sqrt((n + disc) / 2.0);
      const double lm = std::sqrt((n - disc) / 2.0);
      vals = {-lp, -lm};
      vals.insert(vals.end(), n - 2, 0.0);
      vals.push_back(lm);
      vals.push_back(lp);
      break;
    }
    case SectorKind::full: {
      // dim 2N: +-sqrt(N), (N-2)-fold +-1, and a two-dim zero block
      vals.push_back(-std::sqrt(double(n)));
      vals.insert(vals.end(), n - 2, -1.0);
      vals.insert(vals.end(), 2, 0.0);
      vals.insert(vals.end(), n - 2, 1.0);
      vals.push_back(std::sqrt(double(n)));
      break;
    }
  }
  std::sort(vals.begin(), vals.end());
  return vals;
}

/// Eigenvector with real coefficients over named basis states.
struct AnalyticEigenpair {
  double value;
  std::vector<std::pair<BasisState, double>> components;

  Eigen::VectorXcd vector(const SubspaceBasis& basis) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.size());
    for (const auto& [state, c] : components) v(basis.index_of(state)) = c;
    return v;
  }
};

/// Dark state of the all-active sector for any N: the photonless
/// zero-eigenvalue superposition (-|e_A> + sum_i |e_i>)/sqrt(N).
inline AnalyticEigenpair analytic_dark_state(const SystemLayout& layout) {
  const int n = layout.n_qubits;
  const double c = 1.0 / std::sqrt(double(n));
  BasisState seed = sector_seed(SectorKind::full, layout);
  AnalyticEigenpair p;
  p.value = 0.0;
  p.components.emplace_back(seed.with_level(layout.central_site(), QuditLevel::e), -c);
  for (int i = 0; i < layout.n_modes(); ++i)
    p.components.emplace_back(seed.with_level(layout.central_site(), QuditLevel::g)
                                  .with_level(i, QuditLevel::e),
                              c);
  return p;
}

/// The closed-form nonzero eigenvectors for N = 3 (all three sectors) plus
/// the zero-eigenvalue vectors where a closed form exists. `active_site`
/// picks the data qudit in |g> for the single sector.
inline std::vector<AnalyticEigenpair> analytic_sector_eigenpairs(SectorKind kind,
                                                                 const SystemLayout& layout,
                                                                 int active_site = 1) {
  if (layout.n_qubits != 3)
    throw std::invalid_argument("analytic_sector_eigenpairs: closed forms are for n_qubits == 3");
  const int A = layout.central_site();
  const double r2 = std::numbers::sqrt2;
  const double r3 = std::numbers::sqrt3;
  const double r5 = std::sqrt(5.0);
  std::vector<AnalyticEigenpair> out;
  const BasisState seed = sector_seed(kind, layout, active_site);
  const BasisState eA = seed.with_level(A, QuditLevel::e);
  const BasisState gA = seed.with_level(A, QuditLevel::g);
  const BasisState p1 = gA.with_photon(0, 1);
  const BasisState p2 = gA.with_photon(1, 1);

  switch (kind) {
    case SectorKind::idle: {
      out.push_back({-r2, {{eA, -r2 / 2}, {p1, 0.5}, {p2, 0.5}}});
      out.push_back({+r2, {{eA, +r2 / 2}, {p1, 0.5}, {p2, 0.5}}});
      out.push_back({0.0, {{p1, -1 / r2}, {p2, 1 / r2}}});
      break;
    }
    case SectorKind::single: {
      const BasisState ek = gA.with_level(active_site, QuditLevel::e);
      // photon of the active qudit's own mode carries the golden-ratio weight
      const BasisState& pa = active_site == 0 ? p1 : p2;
      const BasisState& pi = active_site == 0 ? p2 : p1;
      const double alpha = (1 + r5) / 2, beta = (1 - r5) / 2;
      const double cp = 1 / std::sqrt(5 + r5), cm = 1 / std::sqrt(5 - r5);
      out.push_back({-alpha, {{eA, cp * alpha}, {pi, -cp}, {pa, -cp * alpha}, {ek, cp}}});
      out.push_back({+alpha, {{eA, cp * alpha}, {pi, +cp}, {pa, +cp * alpha}, {ek, cp}}});
      out.push_back({+beta, {{eA, cm * beta}, {pi, +cm}, {pa, +cm * beta}, {ek, cm}}});
      out.push_back({-beta, {{eA, cm * beta}, {pi, -cm}, {pa, -cm * beta}, {ek, cm}}});
      break;
    }
    case SectorKind::full: {
      const BasisState e1 = gA.with_level(0, QuditLevel::e);
      const BasisState e2 = gA.with_level(1, QuditLevel::e);
      const double c = 1 / (2 * r3);
      out.push_back({-r3, {{eA, 2 * c}, {p1, -r3 * c}, {e1, c}, {p2, -r3 * c}, {e2, c}}});
      out.push_back({+r3, {{eA, 2 * c}, {p1, +r3 * c}, {e1, c}, {p2, +r3 * c}, {e2, c}}});
      out.push_back({-1.0, {{p1, 0.5}, {e1, -0.5}, {p2, -0.5}, {e2, 0.5}}});
      out.push_back({+1.0, {{p1, -0.5}, {e1, -0.5}, {p2, 0.5}, {e2, 0.5}}});
      out.push_back({0.0, {{eA, -1 / r3}, {e1, 1 / r3}, {e2, 1 / r3}}});
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Effective dynamics inside the Zeno block
// ---------------------------------------------------------------------------

/// Drive Hamiltonian projected onto the zero-eigenvalue block: a 1x1 model
/// when the seed decouples, or the {seed, dark} two-level model with
/// coupling -Omega/sqrt(N) and dark-state energy Delta.
struct EffectiveModel {
  enum class Regime { nonresonant, resonant };

  std::vector<std::string> labels;
  Eigen::MatrixXcd hamiltonian;
  Regime regime;
  Eigen::VectorXcd seed_vector;  // embedded in the subspace basis
  Eigen::VectorXcd dark_vector;  // size 0 for 1x1 models

  int dim() const { return static_cast<int>(hamiltonian.rows()); }
};

inline EffectiveModel effective_hamiltonian(const ZenoSubspace& zeno, const PulseParams& pulse,
                                            const BasisState& seed) {
  const SubspaceBasis& basis = *zeno.basis;
  if (!rwa_satisfied(pulse.omega))
    detail::warn("effective_hamiltonian: omega = " + std::to_string(pulse.omega) +
                 " g exceeds 0.2 g; the Zeno picture degrades");
  const int seed_idx = basis.index_of(seed);
  if (!zeno.has_dark_block())
    throw std::invalid_argument("effective_hamiltonian: no zero-eigenvalue block");
  const EigenGroup& block = zeno.dark_block();

  Eigen::VectorXcd e_seed = Eigen::VectorXcd::Zero(basis.size());
  e_seed(seed_idx) = 1.0;
  if ((block.projector * e_seed - e_seed).norm() > 1e-9)
    throw std::invalid_argument("effective_hamiltonian: seed is not in the zero-eigenvalue block");

  // Intersect the zero block with the zero-photon sector: solve
  // (I - Z) V0 c = 0 where Z keeps photonless components.
  Eigen::MatrixXcd V0 = block.vectors;
  Eigen::MatrixXcd out_of_sector = V0;
  for (int i = 0; i < basis.size(); ++i)
    if (basis.state(i).total_photons() == 0) out_of_sector.row(i).setZero();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(out_of_sector, Eigen::ComputeFullV);
  std::vector<Eigen::VectorXcd> intersection;
  for (int k = 0; k < V0.cols(); ++k) {
    const double sv = k < svd.singularValues().size() ? svd.singularValues()(k) : 0.0;
    if (sv <= 1e-9) intersection.push_back(V0 * svd.matrixV().col(k));
  }

  // Orthogonalize the intersection against the seed; what survives is the
  // dark partner.
  Eigen::VectorXcd dark;
  bool have_dark = false;
  for (auto& v : intersection) {
    Eigen::VectorXcd w = v - e_seed * (e_seed.dot(v));
    if (have_dark) w -= dark * dark.dot(w);
    if (w.norm() > 1e-8) {
      if (have_dark)
        throw std::runtime_error("effective_hamiltonian: zero-photon Zeno block larger than 2");
      dark = w.normalized();
      have_dark = true;
    }
  }

  HamiltonianSpec drive_only(basis.layout(), pulse, Couplings::uniform(basis.layout(), 0.0));
  const Eigen::MatrixXcd h1 = drive_hamiltonian(drive_only, basis).dense();

  EffectiveModel m;
  m.regime = pulse.delta == 0.0 ? EffectiveModel::Regime::resonant
                                : EffectiveModel::Regime::nonresonant;
  m.seed_vector = e_seed;
  m.labels.push_back(seed.label());

  Complex coupling = have_dark ? Complex(e_seed.dot(h1 * dark)) : Complex(0.0);
  if (have_dark && std::abs(coupling) > 1e-12) {
    // fix the dark state's phase so the coupling is real and negative
    const Complex phase = -coupling / std::abs(coupling);
    dark *= std::conj(phase);
    coupling = e_seed.dot(h1 * dark);
    m.labels.push_back("dark");
    m.dark_vector = dark;
    m.hamiltonian = Eigen::MatrixXcd(2, 2);
    m.hamiltonian << e_seed.dot(h1 * e_seed), coupling, std::conj(coupling), dark.dot(h1 * dark);
  } else {
    m.hamiltonian = Eigen::MatrixXcd(1, 1);
    m.hamiltonian << e_seed.dot(h1 * e_seed);
  }
  return m;
}

/// Phase accumulation rate of the flagged state in the far-detuned regime:
/// Omega^2 / (N Delta). Reject delta = 0, which is the Rabi-cycle regime.
inline double effective_phase_rate(const PulseParams& pulse, int n_qubits) {
  if (pulse.delta == 0.0)
    throw std::domain_error(
        "effective_phase_rate: delta = 0 is the resonant regime; use resonant_gate_time");
  if (std::abs(pulse.omega / pulse.delta) > 0.2)
    detail::warn("effective_phase_rate: omega/delta = " +
                 std::to_string(pulse.omega / pulse.delta) + " exceeds 0.2");
  return pulse.omega * pulse.omega / (n_qubits * pulse.delta);
}

/// Time for the flagged state to pick up `phase` in the far-detuned regime.
inline double nonresonant_gate_time(const PulseParams& pulse, int n_qubits,
                                    double phase = std::numbers::pi) {
  return phase / effective_phase_rate(pulse, n_qubits);
}

/// One full Rabi cycle of the {seed, dark} pair: sqrt(N) pi / Omega.
inline double resonant_gate_time(const PulseParams& pulse, int n_qubits) {
  if (pulse.omega <= 0)
    throw std::domain_error("resonant_gate_time: omega must be positive");
  return std::sqrt(double(n_qubits)) * std::numbers::pi / pulse.omega;
}

}  // namespace zenogate

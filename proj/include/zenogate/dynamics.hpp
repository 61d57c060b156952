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

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "zenogate/model.hpp"
#include "zenogate/propagate.hpp"
#include "zenogate/units.hpp"

namespace zenogate {

class BasisMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pure state over a SubspaceBasis.
class StateVector {
 public:
  StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes)
      : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
    if (amps_.size() != basis_->size())
      throw std::invalid_argument("StateVector: amplitude count != basis size");
  }

  static StateVector unit(BasisPtr basis, const BasisState& state) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(basis->size());
    a(basis->index_of(state)) = 1.0;
    return StateVector(std::move(basis), std::move(a));
  }

  static StateVector superposition(BasisPtr basis,
                                   const std::vector<std::pair<BasisState, Complex>>& parts) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(basis->size());
    for (const auto& [st, c] : parts) a(basis->index_of(st)) += c;
    return StateVector(std::move(basis), std::move(a));
  }

  const BasisPtr& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Complex amplitude(const BasisState& s) const { return amps_(basis_->index_of(s)); }
  Complex amplitude(int i) const { return amps_(i); }
  double norm() const { return amps_.norm(); }
  double population(const BasisState& s) const { return std::norm(amplitude(s)); }

 private:
  BasisPtr basis_;
  Eigen::VectorXcd amps_;
};

inline void require_same_basis(const BasisPtr& a, const BasisPtr& b, const char* who) {
  if (a == b) return;
  if (*a == *b) return;
  throw BasisMismatchError(std::string(who) + ": states live on different bases");
}

inline Complex overlap(const StateVector& a, const StateVector& b) {
  require_same_basis(a.basis(), b.basis(), "overlap");
  return a.amplitudes().dot(b.amplitudes());
}

/// Mixed state over a SubspaceBasis. Kept dense; the bases here stay small.
class DensityMatrix {
 public:
  DensityMatrix(BasisPtr basis, Eigen::MatrixXcd rho) : basis_(std::move(basis)), rho_(std::move(rho)) {
    if (rho_.rows() != basis_->size() || rho_.cols() != basis_->size())
      throw std::invalid_argument("DensityMatrix: shape does not match basis");
  }

  static DensityMatrix pure(const StateVector& psi) {
    return DensityMatrix(psi.basis(), psi.amplitudes() * psi.amplitudes().adjoint());
  }

  const BasisPtr& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  double trace() const { return rho_.trace().real(); }
  double population(const BasisState& s) const {
    const int i = basis_->index_of(s);
    return rho_(i, i).real();
  }
  double hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }
  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho_ + rho_.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  /// trace = 1 +- 1e-7, Hermitian to 1e-10, min eigenvalue >= -1e-7.
  void validate() const {
    if (std::abs(trace() - 1.0) > 1e-7)
      throw std::invalid_argument("DensityMatrix: trace deviates from 1 beyond 1e-7");
    if (hermiticity_error() > 1e-10)
      throw std::invalid_argument("DensityMatrix: not Hermitian to 1e-10");
    if (min_eigenvalue() < -1e-7)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue below -1e-7");
  }

  void symmetrize() { rho_ = 0.5 * (rho_ + rho_.adjoint()).eval(); }

 private:
  BasisPtr basis_;
  Eigen::MatrixXcd rho_;
};

/// Sampled observables along a propagation. Complex columns carry state
/// amplitudes (or populations for density runs); times are in units of 1/g
/// and strictly increasing.
struct TimeSeries {
  std::vector<double> times;
  std::vector<std::string> labels;
  std::vector<std::vector<Complex>> values;  // [sample][column]
  std::vector<std::string> scalar_labels;
  std::vector<std::vector<double>> scalar_values;

  std::size_t n_samples() const { return times.size(); }

  Complex value_at(std::size_t sample, std::size_t column) const {
    return values.at(sample).at(column);
  }
  Complex final_value(std::size_t column) const { return values.back().at(column); }

  /// Column 1 is gt (plus t_ns when physical units are given), then
  /// re(<label>), im(<label>) per complex column, then scalar columns.
  /// Header comment lines carry the resolved configuration.
  void write_csv(std::ostream& os,
                 const std::vector<std::pair<std::string, std::string>>& header = {},
                 const PhysicalUnits* units = nullptr) const;
};

namespace detail {

inline std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace detail

inline void TimeSeries::write_csv(std::ostream& os,
                                  const std::vector<std::pair<std::string, std::string>>& header,
                                  const PhysicalUnits* units) const {
  for (const auto& [k, v] : header) os << "# " << k << "=" << v << "\n";
  os << "gt";
  if (units) os << ",t_ns";
  for (const auto& l : labels) os << ",re(" << l << ")" << ",im(" << l << ")";
  for (const auto& l : scalar_labels) os << "," << l;
  os << "\n";
  for (std::size_t k = 0; k < times.size(); ++k) {
    os << detail::fmt_g(times[k]);
    if (units) os << "," << detail::fmt_g(units->time_ns(times[k]));
    for (std::size_t c = 0; c < labels.size(); ++c)
      os << "," << detail::fmt_g(values[k][c].real()) << "," << detail::fmt_g(values[k][c].imag());
    for (std::size_t c = 0; c < scalar_labels.size(); ++c)
      os << "," << detail::fmt_g(scalar_values[k][c]);
    os << "\n";
  }
}

struct PropagationOptions {
  int dense_dim_limit = 64;  // dense step propagator at or below, Krylov above
  KrylovOptions krylov;
  std::vector<int> tracked;  // basis indices to record; empty = initial support
  int default_samples = 400;
};

struct StateRun {
  TimeSeries series;
  StateVector final_state;
};

namespace detail {

inline std::vector<int> tracked_or_default(const PropagationOptions& opts,
                                           const Eigen::VectorXcd& initial) {
  if (!opts.tracked.empty()) return opts.tracked;
  std::vector<int> t;
  for (int i = 0; i < initial.size(); ++i)
    if (std::abs(initial(i)) > 1e-12) t.push_back(i);
  return t;
}

}  // namespace detail

/// Schroedinger propagation psi(t) = exp(-i H t) psi(0) with samples every
/// `sample_every` (in 1/g; <= 0 means 400 samples across the run). Dense
/// scaling-and-squaring step propagator at small dimension, Krylov
/// exponential action above `dense_dim_limit`.
inline StateRun propagate_state(const OperatorMatrix& h, const StateVector& psi0, double t,
                                double sample_every = -1.0, const PropagationOptions& opts = {}) {
  if (!h.hermitian()) throw std::invalid_argument("propagate_state: Hamiltonian not Hermitian");
  if (h.dim() != psi0.basis()->size())
    throw std::invalid_argument("propagate_state: dimension mismatch");
  if (t < 0) throw std::invalid_argument("propagate_state: negative time");

  const int dim = h.dim();
  int n_steps = opts.default_samples;
  if (sample_every > 0) n_steps = std::max(1, int(std::llround(t / sample_every)));
  const double dt = t / n_steps;

  const std::vector<int> tracked = detail::tracked_or_default(opts, psi0.amplitudes());

  TimeSeries series;
  for (int i : tracked) series.labels.push_back(psi0.basis()->state(i).label());

  Eigen::VectorXcd psi = psi0.amplitudes();
  const double norm0 = psi.norm();

  auto record = [&](double tk) {
    series.times.push_back(tk);
    std::vector<Complex> row;
    row.reserve(tracked.size());
    for (int i : tracked) row.push_back(psi(i));
    series.values.push_back(std::move(row));
  };
  record(0.0);
  if (t == 0) return StateRun{std::move(series), StateVector(psi0.basis(), std::move(psi))};

  const bool dense = dim <= opts.dense_dim_limit;
  Eigen::MatrixXcd u_step;
  SparseMatrixXcd gen;
  if (dense) {
    u_step = dense_expm(Complex(0, -dt) * h.dense());
  } else {
    gen = SparseMatrixXcd(Complex(0, -1) * h.sparse());
  }

  for (int k = 1; k <= n_steps; ++k) {
    if (dense)
      psi = u_step * psi;
    else
      psi = krylov_expv(gen, std::move(psi), dt, opts.krylov);
    if (std::abs(psi.norm() - norm0) > 1e-6)
      throw IntegratorError("propagate_state: norm drift beyond 1e-6");
    record(t * k / n_steps);
  }
  return StateRun{std::move(series), StateVector(psi0.basis(), std::move(psi))};
}

/// Lindblad generator on the column-stacked density matrix.
inline SparseMatrixXcd liouvillian(const OperatorMatrix& h, std::span<const JumpChannel> jumps) {
  const int d = h.dim();
  SparseMatrixXcd eye(d, d);
  eye.setIdentity();
  const SparseMatrixXcd& hs = h.sparse();
  SparseMatrixXcd l(d * d, d * d);
  l = Eigen::kroneckerProduct(eye, SparseMatrixXcd(Complex(0, -1) * hs)).eval();
  l += Eigen::kroneckerProduct(SparseMatrixXcd(Complex(0, 1) * hs.transpose()), eye).eval();
  for (const auto& ch : jumps) {
    if (ch.rate == 0) continue;
    if (ch.op.dim() != d) throw std::invalid_argument("liouvillian: jump dimension mismatch");
    const SparseMatrixXcd& c = ch.op.sparse();
    SparseMatrixXcd cdc = SparseMatrixXcd(c.adjoint()) * c;
    l += ch.rate * Eigen::kroneckerProduct(SparseMatrixXcd(c.conjugate()), c).eval();
    l -= (0.5 * ch.rate) * Eigen::kroneckerProduct(eye, cdc).eval();
    l -= (0.5 * ch.rate) * Eigen::kroneckerProduct(SparseMatrixXcd(cdc.transpose()), eye).eval();
  }
  return l;
}

struct DensityRun {
  TimeSeries series;
  DensityMatrix final_state;
};

/// Master-equation propagation of the vectorized density matrix with the
/// same exponential-action machinery as propagate_state. The density matrix
/// is re-Hermitized at sample points only; trace drift beyond 1e-5 or an
/// eigenvalue below -1e-5 aborts the run.
inline DensityRun propagate_density(const OperatorMatrix& h, std::span<const JumpChannel> jumps,
                                    const DensityMatrix& rho0, double t, double sample_every = -1.0,
                                    const PropagationOptions& opts = {}) {
  if (!h.hermitian()) throw std::invalid_argument("propagate_density: Hamiltonian not Hermitian");
  const int d = h.dim();
  if (d != rho0.basis()->size())
    throw std::invalid_argument("propagate_density: dimension mismatch");
  if (t < 0) throw std::invalid_argument("propagate_density: negative time");

  int n_steps = opts.default_samples;
  if (sample_every > 0) n_steps = std::max(1, int(std::llround(t / sample_every)));
  if (t == 0) n_steps = 0;
  const double dt = n_steps > 0 ? t / n_steps : 0.0;

  const SparseMatrixXcd l = liouvillian(h, jumps);

  Eigen::MatrixXcd rho = rho0.matrix();
  const double trace0 = rho.trace().real();

  std::vector<int> tracked = opts.tracked;
  if (tracked.empty()) {
    for (int i = 0; i < d; ++i)
      if (std::abs(rho(i, i)) > 1e-12) tracked.push_back(i);
  }
  TimeSeries series;
  for (int i : tracked) series.labels.push_back(rho0.basis()->state(i).label());
  series.scalar_labels.push_back("trace");

  auto check_and_record = [&](double tk) {
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (std::abs(tr - trace0) > 1e-5)
      throw IntegratorError("propagate_density: trace drift beyond 1e-5");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-5)
      throw IntegratorError("propagate_density: negative eigenvalue below -1e-5");
    series.times.push_back(tk);
    std::vector<Complex> row;
    for (int i : tracked) row.push_back(rho(i, i));
    series.values.push_back(std::move(row));
    series.scalar_values.push_back({tr});
  };
  check_and_record(0.0);

  const int vdim = d * d;
  const bool dense = vdim <= opts.dense_dim_limit;
  Eigen::MatrixXcd u_step;
  if (dense && n_steps > 0) u_step = dense_expm(dt * Eigen::MatrixXcd(l));

  Eigen::Map<Eigen::VectorXcd> vec(rho.data(), vdim);
  for (int k = 1; k <= n_steps; ++k) {
    if (dense)
      vec = (u_step * vec).eval();
    else
      vec = krylov_expv(l, vec, dt, opts.krylov);
    check_and_record(t * k / n_steps);
  }
  return DensityRun{std::move(series), DensityMatrix(rho0.basis(), std::move(rho))};
}

}  // namespace zenogate

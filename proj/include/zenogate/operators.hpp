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
#include <complex>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "zenogate/basis.hpp"

namespace zenogate {

using Complex = std::complex<double>;
using SparseMatrixXcd = Eigen::SparseMatrix<Complex>;

/// A generator term mapped a state onto one the basis was not closed over.
class ClosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A reachable-subspace enumeration grew past its configured size cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dyad |to><from| acting on one qudit site.
struct QuditTransition {
  int site;
  QuditLevel to;
  QuditLevel from;
};

/// Photon lowering or raising on one resonator mode.
struct ModeAction {
  int mode;
  bool raise;
};

using SiteAction = std::variant<QuditTransition, ModeAction>;

/// One product of site actions with a complex amplitude (units of g).
/// `add_hc` marks terms that carry an implicit "+ h.c." partner; builders
/// and closures expand the partner automatically. A term may touch each
/// site at most once.
class OperatorTerm {
 public:
  OperatorTerm(Complex amplitude, std::vector<SiteAction> actions, bool add_hc = false)
      : amplitude_(amplitude), actions_(std::move(actions)), add_hc_(add_hc) {
    std::vector<int> qudits, modes;
    for (const auto& a : actions_) {
      if (const auto* q = std::get_if<QuditTransition>(&a)) {
        for (int s : qudits)
          if (s == q->site) throw std::invalid_argument("OperatorTerm: qudit touched twice");
        qudits.push_back(q->site);
      } else {
        const auto& m = std::get<ModeAction>(a);
        for (int k : modes)
          if (k == m.mode) throw std::invalid_argument("OperatorTerm: mode touched twice");
        modes.push_back(m.mode);
      }
    }
  }

  /// Scalar multiple of the identity (empty action list).
  static OperatorTerm identity(Complex amplitude = 1.0) { return OperatorTerm(amplitude, {}); }

  Complex amplitude() const { return amplitude_; }
  const std::vector<SiteAction>& actions() const { return actions_; }
  bool add_hc() const { return add_hc_; }

  OperatorTerm adjoint() const {
    std::vector<SiteAction> rev;
    rev.reserve(actions_.size());
    for (const auto& a : actions_) {
      if (const auto* q = std::get_if<QuditTransition>(&a))
        rev.push_back(QuditTransition{q->site, q->from, q->to});
      else {
        const auto& m = std::get<ModeAction>(a);
        rev.push_back(ModeAction{m.mode, !m.raise});
      }
    }
    return OperatorTerm(std::conj(amplitude_), std::move(rev), false);
  }

  /// Applies the term to a product state. Returns the image state and the
  /// accumulated amplitude, or nullopt if the state is annihilated (level
  /// mismatch, lowering the vacuum, or raising past the layout's n_max —
  /// the standard truncated-oscillator convention).
  std::optional<std::pair<Complex, BasisState>> apply(const BasisState& state,
                                                      const SystemLayout& layout) const {
    Complex amp = amplitude_;
    std::vector<QuditLevel> lv = state.levels();
    std::vector<int> ph = state.photons();
    for (const auto& a : actions_) {
      if (const auto* q = std::get_if<QuditTransition>(&a)) {
        if (lv.at(q->site) != q->from) return std::nullopt;
        lv.at(q->site) = q->to;
      } else {
        const auto& m = std::get<ModeAction>(a);
        int& n = ph.at(m.mode);
        if (m.raise) {
          if (n + 1 > layout.n_max) return std::nullopt;
          amp *= std::sqrt(double(n + 1));
          ++n;
        } else {
          if (n == 0) return std::nullopt;
          amp *= std::sqrt(double(n));
          --n;
        }
      }
    }
    return std::make_pair(amp, BasisState(std::move(lv), std::move(ph)));
  }

 private:
  Complex amplitude_;
  std::vector<SiteAction> actions_;
  bool add_hc_;
};

/// Expands "+ h.c." flags into explicit adjoint terms.
inline std::vector<OperatorTerm> expand_hc(std::span<const OperatorTerm> terms) {
  std::vector<OperatorTerm> out;
  out.reserve(terms.size() * 2);
  for (const auto& t : terms) {
    out.push_back(t);
    if (t.add_hc()) out.push_back(t.adjoint());
  }
  return out;
}

/// Breadth-first closure of the seed states under the generator terms,
/// truncated at the layout's n_max photons per mode. Ordering is the BFS
/// discovery order with seeds first, which makes every downstream matrix
/// and CSV reproducible. Throws CapacityError if the closure exceeds
/// `size_cap` states.
inline SubspaceBasis reachable_basis(const SystemLayout& layout,
                                     std::span<const BasisState> seeds,
                                     std::span<const OperatorTerm> generators,
                                     int size_cap = 4096) {
  const std::vector<OperatorTerm> gens = expand_hc(generators);
  std::vector<BasisState> states;
  std::map<BasisState, int> seen;
  for (const auto& s : seeds) {
    if (!s.valid_for(layout))
      throw std::invalid_argument("reachable_basis: seed '" + s.label() + "' invalid for layout");
    if (seen.emplace(s, static_cast<int>(states.size())).second) states.push_back(s);
  }
  std::size_t head = 0;
  while (head < states.size()) {
    const BasisState current = states[head++];
    for (const auto& t : gens) {
      auto img = t.apply(current, layout);
      if (!img) continue;
      if (seen.emplace(img->second, static_cast<int>(states.size())).second) {
        states.push_back(img->second);
        if (static_cast<int>(states.size()) > size_cap)
          throw CapacityError("reachable_basis: closure exceeded cap of " +
                              std::to_string(size_cap) + " states");
      }
    }
  }
  return SubspaceBasis(layout, std::move(states));
}

/// Sparse complex matrix on a SubspaceBasis. The hermitian flag is set from
/// the assembled entries (max |M - M^dag| <= 1e-14), not trusted from the
/// caller.
class OperatorMatrix {
 public:
  OperatorMatrix(SparseMatrixXcd m, bool hermitian) : m_(std::move(m)), hermitian_(hermitian) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("OperatorMatrix: must be square");
  }

  static OperatorMatrix from_sparse(SparseMatrixXcd m) {
    const bool h = is_hermitian(m);
    return OperatorMatrix(std::move(m), h);
  }

  static OperatorMatrix zero(int dim) { return OperatorMatrix(SparseMatrixXcd(dim, dim), true); }

  static OperatorMatrix identity(int dim) {
    SparseMatrixXcd m(dim, dim);
    m.setIdentity();
    return OperatorMatrix(std::move(m), true);
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  bool hermitian() const { return hermitian_; }
  const SparseMatrixXcd& sparse() const { return m_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(m_); }

  OperatorMatrix adjoint() const {
    return OperatorMatrix(SparseMatrixXcd(m_.adjoint()), hermitian_);
  }

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    return from_sparse(a.m_ + b.m_);
  }
  friend OperatorMatrix operator*(Complex c, const OperatorMatrix& a) {
    return from_sparse(SparseMatrixXcd(c * a.m_));
  }

  static bool is_hermitian(const SparseMatrixXcd& m, double tol = 1e-14) {
    SparseMatrixXcd d = SparseMatrixXcd(m - SparseMatrixXcd(m.adjoint()));
    double mx = 0;
    for (int k = 0; k < d.outerSize(); ++k)
      for (SparseMatrixXcd::InnerIterator it(d, k); it; ++it)
        mx = std::max(mx, std::abs(it.value()));
    return mx <= tol;
  }

 private:
  SparseMatrixXcd m_;
  bool hermitian_;
};

/// Assembles <row|term|col> over the basis. Every "+ h.c." flag is expanded.
/// A term image inside the truncated Hilbert space but outside the basis is
/// a ClosureError — matrix elements are never silently dropped. Entries with
/// magnitude below 1e-15 are pruned as structural zeros.
inline OperatorMatrix build_operator(std::span<const OperatorTerm> terms,
                                     const SubspaceBasis& basis) {
  const std::vector<OperatorTerm> expanded = expand_hc(terms);
  const int dim = basis.size();
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int col = 0; col < dim; ++col) {
    const BasisState& st = basis.state(col);
    for (const auto& t : expanded) {
      auto img = t.apply(st, basis.layout());
      if (!img) continue;
      auto row = basis.find(img->second);
      if (!row)
        throw ClosureError("build_operator: term maps '" + st.label() + "' to '" +
                           img->second.label() + "' outside the basis");
      if (std::abs(img->first) > 1e-15) trip.emplace_back(*row, col, img->first);
    }
  }
  SparseMatrixXcd m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  m.prune([](int, int, const Complex& v) { return std::abs(v) > 1e-15; });
  return OperatorMatrix::from_sparse(std::move(m));
}

/// Diagonal operator counting excitations on each basis state.
inline OperatorMatrix excitation_operator(const SubspaceBasis& basis) {
  SparseMatrixXcd m(basis.size(), basis.size());
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int i = 0; i < basis.size(); ++i) {
    const int n = excitation_number(basis.state(i));
    if (n != 0) trip.emplace_back(i, i, double(n));
  }
  m.setFromTriplets(trip.begin(), trip.end());
  return OperatorMatrix(std::move(m), true);
}

inline double max_abs(const SparseMatrixXcd& m) {
  double mx = 0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrixXcd::InnerIterator it(m, k); it; ++it)
      mx = std::max(mx, std::abs(it.value()));
  return mx;
}

/// max |[A,B]| entrywise; the conservation checks use this.
inline double commutator_max_abs(const OperatorMatrix& a, const OperatorMatrix& b) {
  SparseMatrixXcd c = SparseMatrixXcd(a.sparse() * b.sparse() - b.sparse() * a.sparse());
  return max_abs(c);
}

}  // namespace zenogate

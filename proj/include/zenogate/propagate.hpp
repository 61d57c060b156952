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

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/MatrixFunctions>

#include "zenogate/operators.hpp"

namespace zenogate {

/// The propagator lost too much accuracy (norm or trace drift, or a step
/// controller that cannot reach the requested tolerance).
class IntegratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense matrix exponential (Pade scaling-and-squaring).
inline Eigen::MatrixXcd dense_expm(const Eigen::MatrixXcd& a) { return a.exp(); }

struct KrylovOptions {
  int max_dim = 30;      // Krylov subspace dimension
  double tol = 1e-10;    // local error target per unit of the total interval
  int max_retries = 12;  // step-size reductions before giving up
};

/// w = exp(t A) v by Arnoldi projection with adaptive substeps. Works for
/// general (non-Hermitian) sparse A; this is what both the Schroedinger
/// propagation above the dense-dimension limit and the vectorized Lindblad
/// propagation run on.
inline Eigen::VectorXcd krylov_expv(const SparseMatrixXcd& a, Eigen::VectorXcd v, double t,
                                    const KrylovOptions& opt = {}) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("krylov_expv: matrix must be square");
  if (v.size() != n) throw std::invalid_argument("krylov_expv: vector size mismatch");
  if (t == 0.0 || v.norm() == 0.0) return v;

  const int m = std::max(1, std::min(opt.max_dim, n - 1));
  // infinity-norm estimate for the step-size heuristics
  double anorm = 0;
  {
    Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < a.outerSize(); ++k)
      for (SparseMatrixXcd::InnerIterator it(a, k); it; ++it)
        rowsum(it.row()) += std::abs(it.value());
    anorm = rowsum.maxCoeff();
  }
  if (anorm == 0.0) return v;

  const double gamma = 0.9;
  const double rndoff = anorm * 1e-16;
  double xm = 1.0 / m;
  double fact = std::pow((m + 1) / std::exp(1.0), m + 1) * std::sqrt(2 * 3.141592653589793 * (m + 1));
  double t_new = (1.0 / anorm) * std::pow(fact * opt.tol / (4.0 * v.norm() * anorm), xm);

  Eigen::MatrixXcd V(n, m + 2);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 2, m + 2);

  double tk = 0.0;
  const double t_total = std::abs(t);
  const double sgn = t >= 0 ? 1.0 : -1.0;
  Eigen::VectorXcd w = std::move(v);

  while (tk < t_total) {
    const double tau_request = std::min(t_total - tk, t_new);
    double tau = tau_request;
    const double beta = w.norm();
    if (beta == 0.0) break;

    // Arnoldi with modified Gram-Schmidt
    H.setZero();
    V.col(0) = w / beta;
    int k_used = m;
    bool breakdown = false;
    double avnorm = 0.0;
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXcd p = a * V.col(j);
      for (int i = 0; i <= j; ++i) {
        const Complex hij = V.col(i).dot(p);
        H(i, j) = hij;
        p -= hij * V.col(i);
      }
      const double s = p.norm();
      if (s < 1e-12 * anorm || s < 1e-14) {
        k_used = j + 1;
        breakdown = true;
        break;
      }
      H(j + 1, j) = s;
      V.col(j + 1) = p / s;
    }
    if (!breakdown) {
      avnorm = (a * V.col(m)).norm();
      H(m + 1, m) = 1.0;  // augmented column for the error estimate
    } else {
      tau = t_total - tk;  // invariant subspace: the projection is exact
    }

    const int ms = breakdown ? k_used : m + 2;
    int retries = 0;
    for (;;) {
      Eigen::MatrixXcd F = dense_expm(sgn * tau * H.topLeftCorner(ms, ms));
      double err_loc = rndoff;
      if (!breakdown) {
        const double err1 = beta * std::abs(F(m, 0));
        const double err2 = beta * std::abs(F(m + 1, 0)) * avnorm;
        if (err1 > 10.0 * err2) {
          err_loc = err2;
          xm = 1.0 / m;
        } else if (err1 > err2) {
          err_loc = err1 * err2 / (err1 - err2);
          xm = 1.0 / m;
        } else {
          err_loc = err1;
          xm = 1.0 / std::max(1, m - 1);
        }
      }
      // per-step budget: distribute tol over the interval proportionally
      const double budget = std::max(opt.tol * (tau / t_total) * std::max(1.0, beta), rndoff);
      if (breakdown || err_loc <= budget || err_loc <= rndoff * 10) {
        const int keep = breakdown ? k_used : m + 1;
        w = beta * (V.leftCols(keep) * F.topLeftCorner(keep, 1));
        tk += tau;
        if (!breakdown) {
          double t_next = gamma * tau * std::pow(budget / err_loc, xm);
          t_new = std::min(std::max(t_next, tau / 3.0), 3.0 * tau);
        }
        break;
      }
      if (++retries > opt.max_retries)
        throw IntegratorError("krylov_expv: step controller failed to reach tolerance");
      tau = gamma * tau * std::pow(budget / err_loc, xm);
    }
  }
  return w;
}

}  // namespace zenogate

// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Idealized Algorithm on quadratics, where x* is available:
//
//   M_1 = x_0 + span{grad f(x_0)}
//   x_k = argmin { f(x) : x in M_k }
//   y_k = argmin { |y - x*| : y in M_k }
//   M_{k+1} = x_k + span{y_k - x_k, grad f(x_k)}
//
// and the exact potential Psi = |y - x*|^2 + 2 (f(x) - f*) / ell.

#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>

#include "hyncg/quadratic.hpp"

namespace hyncg {

/// Columns are an orthonormal basis of span{directions}. A direction is
/// dropped when its component orthogonal to the previous ones has squared
/// norm below 1e-12 times its own.
template <typename Scalar>
MatrixX<Scalar> orthonormal_basis(const std::vector<VectorX<Scalar>>& directions, Index n) {
  std::vector<VectorX<Scalar>> kept;
  for (const auto& d : directions) {
    if (d.size() != n) throw std::invalid_argument("orthonormal_basis: dimension mismatch");
    const Scalar norm_sq = d.squaredNorm();
    if (norm_sq == 0) continue;
    VectorX<Scalar> v = d;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) v -= q.dot(v) * q;
    }
    const Scalar rest = v.squaredNorm();
    if (rest <= Scalar(1e-12) * norm_sq) continue;
    kept.push_back(v / std::sqrt(rest));
  }
  MatrixX<Scalar> q(n, static_cast<Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) q.col(static_cast<Index>(j)) = kept[j];
  return q;
}

/// Orthogonal projection of `point` onto anchor + span{basis}.
template <typename Scalar>
VectorX<Scalar> projection_onto_affine(const VectorX<Scalar>& point, const VectorX<Scalar>& anchor,
                                       const std::vector<VectorX<Scalar>>& basis) {
  if (point.size() != anchor.size()) {
    throw std::invalid_argument("projection_onto_affine: dimension mismatch");
  }
  const MatrixX<Scalar> q = orthonormal_basis(basis, anchor.size());
  return anchor + q * (q.transpose() * (point - anchor));
}

template <typename Scalar>
struct IaState {
  VectorX<Scalar> x;
  VectorX<Scalar> y;
  std::vector<VectorX<Scalar>> directions;  // spanning M_k, anchored at x_{k-1}
};

/// x of the returned vector is indexed by k = 0..iters (entry 0 is x_0 = y_0).
template <typename Scalar>
std::vector<IaState<Scalar>> ia_run(const QuadraticProblem<Scalar>& problem,
                                    const VectorX<Scalar>& x0, int iters) {
  const auto x_star_opt = problem.exact_minimizer();
  if (!x_star_opt) throw std::invalid_argument("ia_run: exact minimizer required");
  const VectorX<Scalar>& x_star = *x_star_opt;
  const auto& a = problem.matrix();
  std::vector<IaState<Scalar>> out;
  out.push_back({x0, x0, {}});
  VectorX<Scalar> anchor = x0;
  std::vector<VectorX<Scalar>> dirs{problem.gradient(x0)};
  for (int k = 1; k <= iters; ++k) {
    const MatrixX<Scalar> q = orthonormal_basis(dirs, anchor.size());
    IaState<Scalar> s;
    s.directions = dirs;
    if (q.cols() == 0) {
      s.x = anchor;
      s.y = anchor;
    } else {
      const MatrixX<Scalar> reduced = q.transpose() * a * q;
      const VectorX<Scalar> rhs = -(q.transpose() * problem.gradient(anchor));
      s.x = anchor + q * reduced.llt().solve(rhs);
      s.y = anchor + q * (q.transpose() * (x_star - anchor));
    }
    anchor = s.x;
    dirs = {s.y - s.x, problem.gradient(s.x)};
    out.push_back(std::move(s));
  }
  return out;
}

/// Psi = |y - x*|^2 + 2 (f(x) - f*) / ell, with f(x) - f* from the error form.
template <typename Scalar>
Scalar exact_psi(const QuadraticProblem<Scalar>& problem, const VectorX<Scalar>& x,
                 const VectorX<Scalar>& y) {
  const VectorX<Scalar>& x_star = *problem.exact_minimizer();
  return (y - x_star).squaredNorm() + 2 * problem.optimality_gap(x) / problem.strong_convexity();
}

/// tau_k = 2 (f(x_k) - f*) / |r_{k-1}|^2; x_k + tau_k p_k is the point of the
/// CG Krylov space closest to x*.
template <typename Scalar>
Scalar exact_tau(const QuadraticProblem<Scalar>& problem, const VectorX<Scalar>& x,
                 Scalar prev_residual_sq) {
  if (!(prev_residual_sq > 0)) throw std::domain_error("exact_tau: zero residual");
  return 2 * problem.optimality_gap(x) / prev_residual_sq;
}

}  // namespace hyncg

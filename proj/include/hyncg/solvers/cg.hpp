// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hyncg/quadratic.hpp"
#include "hyncg/solvers/common.hpp"

namespace hyncg {

/// Linear conjugate gradient (Hestenes-Stiefel) with the GD potential carried
/// alongside: y_k and sigma~_k follow ycompute exactly as in GD, only x_k comes
/// from CG. Cost = outer iterations.
template <typename Scalar>
SolveResult<Scalar> cg_run(const QuadraticProblem<Scalar>& problem, const VectorX<Scalar>& x0,
                           const SolverOptions<Scalar>& opts) {
  const Scalar ell = problem.strong_convexity();
  const auto& a = problem.matrix();
  SolveResult<Scalar> res;
  VectorX<Scalar> x = x0;
  VectorX<Scalar> r = problem.rhs() - a * x;
  VectorX<Scalar> g = -r;
  VectorX<Scalar> p = r;
  Scalar rr = r.squaredNorm();
  Scalar f = problem.value(x);
  PotentialState<Scalar> pot = init_potential(g, ell);
  detail::push_record(res, opts, 0, StepKind::init, f, std::sqrt(rr), pot.tilde_sigma_sq, 0);
  if (opts.observer) {
    IterateView<Scalar> v;
    v.x = &x;
    v.y_offset = &pot.y_offset;
    v.gradient = &g;
    v.f = f;
    v.sigma_sq = pot.tilde_sigma_sq;
    opts.observer(v);
  }

  long k = 0;
  VectorX<Scalar> used_direction;
  while (true) {
    if (std::sqrt(rr) <= opts.tol) {
      res.converged = true;
      break;
    }
    if (k >= opts.max_outer) break;
    ++k;
    const YComputeResult<Scalar> yc = ycompute(g, pot.y_offset, pot.tilde_sigma_sq, ell);
    const VectorX<Scalar> ap = a * p;
    const Scalar pap = p.dot(ap);
    if (!(pap > 0)) {
      res.diagnostic = "p^T A p <= 0: operator is not positive definite";
      break;
    }
    const Scalar alpha = rr / pap;
    const VectorX<Scalar> step = alpha * p;
    const Scalar gamma = stable_gamma_diff<Scalar>(problem, x, step);
    const SigmaUpdate<Scalar> su = update_sigma_saturating(yc.xi_star_sq, gamma);
    if (su.violated) ++res.potential_violations;
    pot.tilde_sigma_sq = su.value;
    x += step;
    pot.y_offset = yc.y_next_offset - step;
    r -= alpha * ap;
    const Scalar rr_prev = rr;
    rr = r.squaredNorm();
    used_direction = p;
    p = r + (rr / rr_prev) * p;
    g = -r;
    f = problem.value(x);
    detail::push_record(res, opts, k, StepKind::cg, f, std::sqrt(rr), pot.tilde_sigma_sq, 1L);
    if (opts.observer) {
      IterateView<Scalar> v;
      v.outer = k;
      v.kind = StepKind::cg;
      v.x = &x;
      v.y_offset = &pot.y_offset;
      v.direction = &used_direction;
      v.gradient = &g;
      v.f = f;
      v.sigma_sq = pot.tilde_sigma_sq;
      v.prev_residual_sq = rr_prev;
      v.branch = yc.branch;
      opts.observer(v);
    }
  }
  res.outer_iterations = k;
  res.x = std::move(x);
  res.f = f;
  res.grad_norm = problem.gradient(res.x).norm();
  return res;
}

}  // namespace hyncg

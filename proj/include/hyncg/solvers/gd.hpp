// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hyncg/solvers/common.hpp"

namespace hyncg {

/// Geometric Descent. Cost = inner line-search evaluations.
template <typename Scalar>
SolveResult<Scalar> gd_run(const Objective<Scalar>& problem, const VectorX<Scalar>& x0,
                           const SolverOptions<Scalar>& opts) {
  const Scalar ell = problem.strong_convexity();
  SolveResult<Scalar> res;
  VectorX<Scalar> x = x0;
  VectorX<Scalar> g;
  Scalar f = problem.value_and_gradient(x, g);
  if (!detail::check_finite(res, f, g)) {
    res.x = x;
    return res;
  }
  PotentialState<Scalar> pot = init_potential(g, ell);
  detail::push_record(res, opts, 0, StepKind::init, f, g.norm(), pot.tilde_sigma_sq, 0);
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
  while (true) {
    const Scalar gnorm = g.norm();
    if (gnorm <= opts.tol) {
      res.converged = true;
      break;
    }
    if (k >= opts.max_outer) break;
    ++k;
    const YComputeResult<Scalar> yc = ycompute(g, pot.y_offset, pot.tilde_sigma_sq, ell);
    const detail::DoglegStep<Scalar> st = detail::dogleg_step(problem, x, g, yc.y_next_offset,
                                                              opts.line);
    if (!st.converged) ++res.line_search_failures;
    const Scalar gamma = stable_gamma_diff(problem, x, st.step);
    const SigmaUpdate<Scalar> su = update_sigma_saturating(yc.xi_star_sq, gamma);
    if (su.violated) ++res.potential_violations;
    pot.tilde_sigma_sq = su.value;
    x += st.step;
    pot.y_offset = yc.y_next_offset - st.step;
    f = problem.value_and_gradient(x, g);
    if (!detail::check_finite(res, f, g)) break;
    detail::push_record(res, opts, k, StepKind::gd, f, g.norm(), pot.tilde_sigma_sq,
                        static_cast<long>(st.evaluations));
    if (opts.observer) {
      IterateView<Scalar> v;
      v.outer = k;
      v.kind = StepKind::gd;
      v.x = &x;
      v.y_offset = &pot.y_offset;
      v.gradient = &g;
      v.f = f;
      v.sigma_sq = pot.tilde_sigma_sq;
      v.branch = yc.branch;
      opts.observer(v);
    }
  }
  res.outer_iterations = k;
  res.x = std::move(x);
  res.f = f;
  res.grad_norm = g.norm();
  return res;
}

}  // namespace hyncg

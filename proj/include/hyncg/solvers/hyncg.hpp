// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "hyncg/solvers/common.hpp"
#include "hyncg/solvers/ncg.hpp"

namespace hyncg {

namespace detail {

/// CG candidate evaluated on the restriction of f to its line, so that the
/// curvature and the exact f-difference come from one setup.
template <typename Scalar>
struct CgCandidate {
  bool ok = false;
  VectorX<Scalar> direction;
  VectorX<Scalar> step;
  Scalar gamma = 0;  // 2 (f(x + step) - f(x)) / ell
};

template <typename Scalar>
CgCandidate<Scalar> cg_candidate(const Objective<Scalar>& problem, const VectorX<Scalar>& x,
                                 const VectorX<Scalar>& p_prev, const VectorX<Scalar>& g_prev2,
                                 const VectorX<Scalar>& g, long k) {
  CgCandidate<Scalar> out;
  auto dir = hz_direction(p_prev, g_prev2, g, k);
  if (!dir) return out;
  const auto phi = problem.restrict_to_line(x, *dir);
  const LinePoint<Scalar> p0 = phi->evaluate(Scalar(0));
  if (!(p0.curvature > 0) || !std::isfinite(static_cast<double>(p0.curvature))) return out;
  const Scalar alpha = -p0.slope / p0.curvature;
  if (!std::isfinite(static_cast<double>(alpha)) || alpha == 0) return out;
  out.gamma = 2 * phi->difference(alpha) / problem.strong_convexity();
  if (!std::isfinite(static_cast<double>(out.gamma))) return out;
  out.step = alpha * *dir;
  out.direction = std::move(*dir);
  out.ok = true;
  return out;
}

template <typename Scalar>
void observe(const SolverOptions<Scalar>& opts, long k, StepKind kind, const VectorX<Scalar>& x,
             const PotentialState<Scalar>& pot, const VectorX<Scalar>& p,
             const VectorX<Scalar>& g, Scalar f, YBranch branch) {
  if (!opts.observer) return;
  IterateView<Scalar> v;
  v.outer = k;
  v.kind = kind;
  v.x = &x;
  v.y_offset = &pot.y_offset;
  v.direction = &p;
  v.gradient = &g;
  v.f = f;
  v.sigma_sq = pot.tilde_sigma_sq;
  v.branch = branch;
  opts.observer(v);
}

}  // namespace detail

/// Hybrid nonlinear CG. Each iteration tries the CG candidate and keeps it
/// when f does not increase and the potential shrinks by 1 - sqrt(ell/L);
/// otherwise it takes the GD dogleg step. Cost = CG candidates tried + inner
/// line-search evaluations of the fallbacks.
template <typename Scalar>
SolveResult<Scalar> hyncg_run(const Objective<Scalar>& problem, const VectorX<Scalar>& x0,
                              const SolverOptions<Scalar>& opts) {
  const Scalar ell = problem.strong_convexity();
  const Scalar rate = 1 - std::sqrt(ell / problem.smoothness());
  SolveResult<Scalar> res;
  VectorX<Scalar> x = x0;
  VectorX<Scalar> g;
  Scalar f = problem.value_and_gradient(x, g);
  if (!detail::check_finite(res, f, g)) {
    res.x = x;
    return res;
  }
  PotentialState<Scalar> pot = init_potential(g, ell);
  VectorX<Scalar> p;
  VectorX<Scalar> g_prev;
  detail::push_record(res, opts, 0, StepKind::init, f, g.norm(), pot.tilde_sigma_sq, 0);
  detail::observe(opts, 0, StepKind::init, x, pot, p, g, f, YBranch::shrink);

  long k = 0;
  while (true) {
    if (g.norm() <= opts.tol) {
      res.converged = true;
      break;
    }
    if (k >= opts.max_outer) break;
    ++k;
    const YComputeResult<Scalar> yc = ycompute(g, pot.y_offset, pot.tilde_sigma_sq, ell);
    long cost = 0;
    detail::CgCandidate<Scalar> cg = detail::cg_candidate(problem, x, p, g_prev, g, k);
    if (cg.ok) cost += 1;
    VectorX<Scalar> step;
    StepKind kind;
    const Scalar sigma_cg = yc.xi_star_sq + cg.gamma;
    if (cg.ok && cg.gamma <= 0 && sigma_cg <= rate * pot.tilde_sigma_sq) {
      kind = StepKind::cg_accepted;
      ++res.cg_accepted;
      const SigmaUpdate<Scalar> su = update_sigma_saturating(yc.xi_star_sq, cg.gamma);
      if (su.violated) ++res.potential_violations;
      pot.tilde_sigma_sq = su.value;
      step = std::move(cg.step);
      p = std::move(cg.direction);
    } else {
      kind = StepKind::gd_fallback;
      ++res.gd_fallbacks;
      detail::DoglegStep<Scalar> st = detail::dogleg_step(problem, x, g, yc.y_next_offset,
                                                          opts.line);
      if (!st.converged) ++res.line_search_failures;
      cost += st.evaluations;
      const Scalar gamma = stable_gamma_diff(problem, x, st.step);
      const SigmaUpdate<Scalar> su = update_sigma_saturating(yc.xi_star_sq, gamma);
      if (su.violated) ++res.potential_violations;
      pot.tilde_sigma_sq = su.value;
      step = std::move(st.step);
      p = step;
    }
    x += step;
    pot.y_offset = yc.y_next_offset - step;
    g_prev = std::move(g);
    f = problem.value_and_gradient(x, g);
    if (!detail::check_finite(res, f, g)) break;
    detail::push_record(res, opts, k, kind, f, g.norm(), pot.tilde_sigma_sq, cost);
    detail::observe(opts, k, kind, x, pot, p, g, f, yc.branch);
  }
  res.outer_iterations = k;
  res.x = std::move(x);
  res.f = f;
  res.grad_norm = g.norm();
  return res;
}

enum class HybridCriterion { grad_norm, f_value };

/// Potential-free hybrids: both the GD and the CG step are computed and the one
/// giving the smaller |grad f| (or f) is kept. Cost = CG candidate + GD inner
/// evaluations, every iteration. y and sigma~ are still advanced because the GD
/// step needs y.
template <typename Scalar>
SolveResult<Scalar> hyncg_variant_run(const Objective<Scalar>& problem, const VectorX<Scalar>& x0,
                                      const SolverOptions<Scalar>& opts,
                                      HybridCriterion criterion) {
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
  VectorX<Scalar> p;
  VectorX<Scalar> g_prev;
  detail::push_record(res, opts, 0, StepKind::init, f, g.norm(), pot.tilde_sigma_sq, 0);
  detail::observe(opts, 0, StepKind::init, x, pot, p, g, f, YBranch::shrink);

  long k = 0;
  while (true) {
    if (g.norm() <= opts.tol) {
      res.converged = true;
      break;
    }
    if (k >= opts.max_outer) break;
    ++k;
    const YComputeResult<Scalar> yc = ycompute(g, pot.y_offset, pot.tilde_sigma_sq, ell);
    detail::DoglegStep<Scalar> gd = detail::dogleg_step(problem, x, g, yc.y_next_offset,
                                                        opts.line);
    if (!gd.converged) ++res.line_search_failures;
    long cost = gd.evaluations;
    VectorX<Scalar> x_gd = x + gd.step;
    VectorX<Scalar> g_gd;
    const Scalar f_gd = problem.value_and_gradient(x_gd, g_gd);

    detail::CgCandidate<Scalar> cg = detail::cg_candidate(problem, x, p, g_prev, g, k);
    bool take_cg = false;
    VectorX<Scalar> x_cg;
    VectorX<Scalar> g_cg;
    Scalar f_cg = 0;
    if (cg.ok) {
      cost += 1;
      x_cg = x + cg.step;
      f_cg = problem.value_and_gradient(x_cg, g_cg);
      if (std::isfinite(static_cast<double>(f_cg)) && g_cg.allFinite()) {
        take_cg = criterion == HybridCriterion::grad_norm ? g_cg.norm() < g_gd.norm()
                                                          : f_cg < f_gd;
      }
    }
    VectorX<Scalar> step;
    Scalar gamma;
    StepKind kind;
    if (take_cg) {
      kind = StepKind::cg_accepted;
      ++res.cg_accepted;
      gamma = cg.gamma;
      step = std::move(cg.step);
      p = std::move(cg.direction);
      x = std::move(x_cg);
      f = f_cg;
      g_prev = std::move(g);
      g = std::move(g_cg);
    } else {
      kind = StepKind::gd_fallback;
      ++res.gd_fallbacks;
      gamma = stable_gamma_diff(problem, x, gd.step);
      step = std::move(gd.step);
      p = step;
      x = std::move(x_gd);
      f = f_gd;
      g_prev = std::move(g);
      g = std::move(g_gd);
    }
    const SigmaUpdate<Scalar> su = update_sigma_saturating(yc.xi_star_sq, gamma);
    if (su.violated) ++res.potential_violations;
    pot.tilde_sigma_sq = su.value;
    pot.y_offset = yc.y_next_offset - step;
    if (!detail::check_finite(res, f, g)) break;
    detail::push_record(res, opts, k, kind, f, g.norm(), pot.tilde_sigma_sq, cost);
    detail::observe(opts, k, kind, x, pot, p, g, f, yc.branch);
  }
  res.outer_iterations = k;
  res.x = std::move(x);
  res.f = f;
  res.grad_norm = g.norm();
  return res;
}

}  // namespace hyncg

// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "hyncg/solvers/common.hpp"

namespace hyncg {

/// Hager-Zhang direction p_k = beta_k p_{k-1} - g_{k-1} with
///   beta_k = (z - 2 p_{k-1} |z|^2 / z^T p_{k-1})^T g_{k-1} / z^T p_{k-1},
///   z = g_{k-1} - g_{k-2}.
/// k = 1 gives -g. Empty when z^T p_{k-1} = 0.
template <typename Scalar>
std::optional<VectorX<Scalar>> hz_direction(const VectorX<Scalar>& p_prev,
                                            const VectorX<Scalar>& g_prev2,
                                            const VectorX<Scalar>& g_prev, long k) {
  if (k <= 1 || p_prev.size() == 0) return VectorX<Scalar>(-g_prev);
  const VectorX<Scalar> z = g_prev - g_prev2;
  const Scalar zp = z.dot(p_prev);
  if (zp == 0 || !std::isfinite(static_cast<double>(zp))) return std::nullopt;
  const Scalar beta = (z.dot(g_prev) - 2 * z.squaredNorm() * p_prev.dot(g_prev) / zp) / zp;
  if (!std::isfinite(static_cast<double>(beta))) return std::nullopt;
  return VectorX<Scalar>(beta * p_prev - g_prev);
}

template <typename Scalar>
struct CgStepResult {
  bool ok = false;
  VectorX<Scalar> x_candidate;
  VectorX<Scalar> direction;
  Scalar alpha = 0;
};

/// CGSTEP: Hager-Zhang direction and the step minimizing the second-order
/// Taylor model of f along it, alpha = -p^T g / p^T H p. ok = false when the
/// direction is undefined or the curvature is not positive.
template <typename Scalar>
CgStepResult<Scalar> cgstep(const Objective<Scalar>& problem, const VectorX<Scalar>& x_prev,
                            const VectorX<Scalar>& p_prev, const VectorX<Scalar>& g_prev2,
                            const VectorX<Scalar>& g_prev, long k) {
  CgStepResult<Scalar> out;
  auto dir = hz_direction(p_prev, g_prev2, g_prev, k);
  if (!dir) return out;
  const Scalar curv = problem.curvature(x_prev, *dir);
  if (!(curv > 0) || !std::isfinite(static_cast<double>(curv))) return out;
  out.alpha = -dir->dot(g_prev) / curv;
  out.direction = std::move(*dir);
  out.x_candidate = x_prev + out.alpha * out.direction;
  out.ok = true;
  return out;
}

/// Nonlinear CG with the Hager-Zhang beta and the Newton line search, restarting
/// with -g whenever the direction is not a descent direction. Cost = inner
/// line-search evaluations. No potential is tracked.
template <typename Scalar>
SolveResult<Scalar> ncg_run(const Objective<Scalar>& problem, const VectorX<Scalar>& x0,
                            const SolverOptions<Scalar>& opts) {
  SolveResult<Scalar> res;
  VectorX<Scalar> x = x0;
  VectorX<Scalar> g;
  Scalar f = problem.value_and_gradient(x, g);
  if (!detail::check_finite(res, f, g)) {
    res.x = x;
    return res;
  }
  const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
  detail::push_record(res, opts, 0, StepKind::init, f, g.norm(), nan, 0);
  VectorX<Scalar> p_prev;
  VectorX<Scalar> g_prev;
  long k = 0;
  while (true) {
    if (g.norm() <= opts.tol) {
      res.converged = true;
      break;
    }
    if (k >= opts.max_outer) break;
    ++k;
    auto dir = hz_direction(p_prev, g_prev, g, k);
    VectorX<Scalar> p = dir ? std::move(*dir) : VectorX<Scalar>(-g);
    if (!(p.dot(g) < 0)) p = -g;
    const auto phi = problem.restrict_to_line(x, p);
    const auto ls = line_search(*phi, opts.line);
    if (!ls.converged) ++res.line_search_failures;
    if (ls.alpha == 0) {
      detail::push_record(res, opts, k, StepKind::ncg, f, g.norm(), nan,
                          static_cast<long>(ls.evaluations));
      res.diagnostic = "line search made no progress";
      break;
    }
    x += ls.alpha * p;
    g_prev = std::move(g);
    f = problem.value_and_gradient(x, g);
    if (!detail::check_finite(res, f, g)) break;
    p_prev = std::move(p);
    detail::push_record(res, opts, k, StepKind::ncg, f, g.norm(), nan,
                        static_cast<long>(ls.evaluations));
    if (opts.observer) {
      IterateView<Scalar> v;
      v.outer = k;
      v.kind = StepKind::ncg;
      v.x = &x;
      v.direction = &p_prev;
      v.gradient = &g;
      v.f = f;
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

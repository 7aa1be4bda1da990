// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "hyncg/solvers/common.hpp"

namespace hyncg {

template <typename Scalar>
struct AgParameters {
  Scalar kappa = 1;
  Scalar theta = 0;
  Scalar tau = 0;
};

template <typename Scalar>
AgParameters<Scalar> ag_parameters(Scalar ell, Scalar big_l) {
  if (!(ell > 0) || !(big_l >= ell)) throw std::domain_error("ag_parameters: need 0 < ell <= L");
  const Scalar kappa = big_l / ell;
  const Scalar rk = std::sqrt(kappa);
  return {kappa, (rk - 1) / (rk + 1), rk - 1};
}

/// Interval between from-scratch recomputation of the carried linear images.
inline constexpr long kAgImageRefresh = 50;

/// Nesterov's accelerated gradient with constant momentum. Cost = outer
/// iterations. Stops when |grad f(w_k)| <= tol and returns w_k.
///
/// The auxiliary y_k = x_k + tau (x_k - x_{k-1}) and the sigma~ recurrence
///   sigma~_{k+1}^2 = (1 - kappa^{-1/2}) sigma~_k^2 + 2 (f(x_{k+1}) - f(w_k)) / ell
///                    + |grad f(w_k)|^2 / (L ell) - (kappa^{1/2} - kappa^{-1/2}) |w_k - x_k|^2
/// are reported to the observer and the trace only.
///
/// For problems with a linear image (f depends on x through K x plus a
/// separable term) K x and K w are carried through the affine updates, so an
/// iteration costs one K and one K^T product.
template <typename Scalar>
SolveResult<Scalar> ag_run(const Objective<Scalar>& problem, const VectorX<Scalar>& x0,
                           const SolverOptions<Scalar>& opts) {
  const Scalar ell = problem.strong_convexity();
  const Scalar big_l = problem.smoothness();
  const AgParameters<Scalar> prm = ag_parameters(ell, big_l);
  const Scalar rk = std::sqrt(prm.kappa);
  const Scalar contraction = 1 - 1 / rk;
  const Scalar momentum_weight = rk - 1 / rk;

  SolveResult<Scalar> res;
  VectorX<Scalar> x = x0;
  VectorX<Scalar> w = x0;
  VectorX<Scalar> image_x = problem.linear_image(x);
  const bool use_image = image_x.size() > 0;
  VectorX<Scalar> image_w = image_x;
  VectorX<Scalar> gw;
  Scalar fw = use_image ? problem.value_and_gradient_from_image(w, image_w, gw)
                        : problem.value_and_gradient(w, gw);
  Scalar fx = fw;
  if (!detail::check_finite(res, fw, gw)) {
    res.x = w;
    return res;
  }
  Scalar sigma_sq = initial_sigma_sq(gw.norm(), ell);
  detail::push_record(res, opts, 0, StepKind::init, fx, gw.norm(), sigma_sq, 0);
  VectorX<Scalar> y_offset = VectorX<Scalar>::Zero(x.size());
  if (opts.observer) {
    IterateView<Scalar> v;
    v.x = &x;
    v.y_offset = &y_offset;
    v.gradient = &gw;
    v.f = fx;
    v.sigma_sq = sigma_sq;
    opts.observer(v);
  }

  long k = 0;
  VectorX<Scalar> x_next;
  VectorX<Scalar> image_next;
  while (true) {
    const Scalar gnorm = gw.norm();
    if (gnorm <= opts.tol) {
      res.converged = true;
      break;
    }
    if (k >= opts.max_outer) break;
    ++k;
    x_next = w - gw / big_l;
    Scalar f_next;
    if (use_image) {
      image_next = image_w - problem.linear_image(gw) / big_l;
      f_next = problem.value_from_image(x_next, image_next);
    } else {
      f_next = problem.value(x_next);
    }
    sigma_sq = contraction * sigma_sq + 2 * (f_next - fw) / ell + gnorm * gnorm / (big_l * ell) -
               momentum_weight * (w - x).squaredNorm();
    const VectorX<Scalar> dx = x_next - x;
    w = x_next + prm.theta * dx;
    y_offset = prm.tau * dx;
    if (use_image) {
      if (k % kAgImageRefresh == 0) {
        image_next = problem.linear_image(x_next);
        image_w = problem.linear_image(w);
      } else {
        image_w = (1 + prm.theta) * image_next - prm.theta * image_x;
      }
      image_x = image_next;
    }
    x.swap(x_next);
    fx = f_next;
    fw = use_image ? problem.value_and_gradient_from_image(w, image_w, gw)
                   : problem.value_and_gradient(w, gw);
    if (!detail::check_finite(res, fw, gw)) break;
    detail::push_record(res, opts, k, StepKind::ag, fx, gw.norm(), sigma_sq, 1L);
    if (opts.observer) {
      IterateView<Scalar> v;
      v.outer = k;
      v.kind = StepKind::ag;
      v.x = &x;
      v.y_offset = &y_offset;
      v.gradient = &gw;
      v.f = fx;
      v.sigma_sq = sigma_sq;
      opts.observer(v);
    }
  }
  res.outer_iterations = k;
  res.x = w;
  res.f = fw;
  res.grad_norm = gw.norm();
  return res;
}

}  // namespace hyncg

// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// The computable potential sigma~_k^2 = sigma_k^2 + gamma_k, where sigma_k is
// the radius of a ball around y_k known to contain x* and
// gamma_k = 2 (f(x_k) - f*) / ell. Only differences of gamma are ever formed,
// so f* is never needed.
//
// y_k is stored as the offset y_k - x_k; both terms tend to x* and the
// absolute positions would lose the digits that the ball geometry needs.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hyncg/geometry.hpp"
#include "hyncg/objective.hpp"

namespace hyncg {

template <typename Scalar>
struct PotentialState {
  Scalar tilde_sigma_sq = 0;
  VectorX<Scalar> y_offset;  // y_k - x_k
};

enum class YBranch { shrink, reset_to_oobx, keep_previous };

inline const char* to_string(YBranch b) {
  switch (b) {
    case YBranch::shrink:
      return "shrink";
    case YBranch::reset_to_oobx:
      return "reset_to_oobx";
    case YBranch::keep_previous:
      return "keep_previous";
  }
  return "?";
}

template <typename Scalar>
struct YComputeResult {
  VectorX<Scalar> y_next_offset;  // y_k - x_{k-1}
  Scalar xi_star_sq = 0;
  Scalar lambda = 0;
  YBranch branch = YBranch::shrink;
};

/// sigma~_0^2 = 2 |g0|^2 / ell^2 and y_0 = x_0.
template <typename Scalar>
Scalar initial_sigma_sq(Scalar grad_norm, Scalar ell) {
  if (!(ell > 0)) throw std::domain_error("init_potential: ell must be positive");
  if (!(grad_norm >= 0)) throw std::domain_error("init_potential: negative gradient norm");
  const Scalar r = grad_norm / ell;
  return 2 * r * r;
}

template <typename Scalar>
PotentialState<Scalar> init_potential(Scalar grad_norm, Scalar ell, Index dimension) {
  return {initial_sigma_sq(grad_norm, ell), VectorX<Scalar>::Zero(dimension)};
}

/// Same as above from the gradient itself; rho~^2 inside ycompute is formed
/// from the same scaled vector so that the first step sees sigma~^2 = 2 rho~^2
/// bit for bit.
template <typename Scalar>
PotentialState<Scalar> init_potential(const VectorX<Scalar>& g0, Scalar ell) {
  if (!(ell > 0)) throw std::domain_error("init_potential: ell must be positive");
  const VectorX<Scalar> scaled = g0 / ell;
  return {2 * scaled.squaredNorm(), VectorX<Scalar>::Zero(g0.size())};
}

/// Relative slack used when testing the conditions delta >= rho~ that hold
/// with equality on the first step.
template <typename Scalar>
constexpr Scalar ycompute_slack() {
  return Scalar(1e-8);
}

/// New center y_k and squared radius xi~*_k^2 from the ball B(x - g/ell, rho~)
/// and the previous ball B(y, sigma~). Conditions are tested in squared form;
/// the strict inequalities become non-strict with a small relative slack so
/// that the first step (y_0 = x_0, hence delta = rho~ exactly) is a shrink.
template <typename Scalar>
YComputeResult<Scalar> ycompute(const VectorX<Scalar>& g_prev, const VectorX<Scalar>& y_offset_prev,
                                Scalar tilde_sigma_sq_prev, Scalar ell) {
  if (!(ell > 0)) throw std::domain_error("ycompute: ell must be positive");
  if (!(tilde_sigma_sq_prev >= 0)) throw std::domain_error("ycompute: negative sigma~^2");
  if (g_prev.size() != y_offset_prev.size()) {
    throw std::invalid_argument("ycompute: dimension mismatch");
  }
  const VectorX<Scalar> scaled = g_prev / ell;
  const Scalar rho_sq = scaled.squaredNorm();
  if (rho_sq == 0) throw std::domain_error("ycompute: zero gradient, iteration has converged");
  const Scalar sigma_sq = tilde_sigma_sq_prev;

  YComputeResult<Scalar> out;
  if (sigma_sq > 2 * rho_sq) {
    out.branch = YBranch::reset_to_oobx;
    out.lambda = 0;
    out.xi_star_sq = rho_sq;
    out.y_next_offset = -scaled;
    return out;
  }

  // y - oobx = (y - x) + g / ell
  const VectorX<Scalar> gap_vec = y_offset_prev + scaled;
  const Scalar delta_sq = gap_vec.squaredNorm();
  const Scalar gap = rho_sq - sigma_sq;
  const Scalar slack = ycompute_slack<Scalar>();
  const bool far_enough = delta_sq >= rho_sq * (1 - slack);
  const bool radii_close = rho_sq >= std::abs(gap) * (1 - slack);
  if (!(far_enough && radii_close) || delta_sq == 0) {
    out.branch = YBranch::keep_previous;
    out.lambda = 1;
    out.xi_star_sq = sigma_sq;
    out.y_next_offset = y_offset_prev;
    return out;
  }

  out.branch = YBranch::shrink;
  const BallPairParams<Scalar> params{rho_sq, sigma_sq, delta_sq};
  if (delta_sq >= std::abs(gap)) {
    out.lambda = optimal_lambda(params);
    try {
      out.xi_star_sq = optimal_radius_sq(params);
    } catch (const std::domain_error&) {
      // Disjoint balls: only possible when ell overestimates the true modulus.
      out.xi_star_sq = 0;
    }
  } else {
    // Inside the slack band the Lemma 2 hypothesis fails by roundoff only;
    // the clamped lambda still gives a valid Lemma 1 radius.
    out.lambda = std::clamp((delta_sq + gap) / (2 * delta_sq), Scalar(0), Scalar(1));
    const Scalar xi = (1 - out.lambda) * rho_sq + out.lambda * sigma_sq -
                      out.lambda * (1 - out.lambda) * delta_sq;
    out.xi_star_sq = std::max(Scalar(0), xi);
  }
  // (1 - lambda) oobx + lambda y, relative to x
  out.y_next_offset = out.lambda * y_offset_prev - (1 - out.lambda) * scaled;
  return out;
}

/// 2 (f(x + step) - f(x)) / ell from the problem's cancellation-free line
/// difference.
template <typename Scalar>
Scalar stable_gamma_diff(const Objective<Scalar>& problem, const VectorX<Scalar>& x_prev,
                         const VectorX<Scalar>& step) {
  if (step.size() != x_prev.size()) {
    throw std::invalid_argument("stable_gamma_diff: dimension mismatch");
  }
  if (step.squaredNorm() == 0) return Scalar(0);
  const auto line = problem.restrict_to_line(x_prev, step);
  return 2 * line->difference(Scalar(1)) / problem.strong_convexity();
}

/// The same quantity by subtracting two function values.
template <typename Scalar>
Scalar naive_gamma_diff(const Objective<Scalar>& problem, const VectorX<Scalar>& x_prev,
                        const VectorX<Scalar>& step) {
  const VectorX<Scalar> x_next = x_prev + step;
  return 2 * (problem.value(x_next) - problem.value(x_prev)) / problem.strong_convexity();
}

/// xi~*^2 + gamma^; tiny negatives from roundoff are clamped to zero.
template <typename Scalar>
Scalar update_sigma(Scalar xi_star_sq, Scalar gamma_diff) {
  const Scalar value = xi_star_sq + gamma_diff;
  if (value >= 0) return value;
  const Scalar scale = std::max(std::abs(xi_star_sq), std::abs(gamma_diff));
  if (value >= -Scalar(1e-12) * std::max(scale, Scalar(1))) return Scalar(0);
  throw std::domain_error("update_sigma: sigma~^2 would be " +
                          std::to_string(static_cast<double>(value)) +
                          "; line search or (ell, L) inconsistent");
}

/// Saturating form for solvers: never throws, flags a violation instead.
template <typename Scalar>
struct SigmaUpdate {
  Scalar value = 0;
  bool violated = false;
};

template <typename Scalar>
SigmaUpdate<Scalar> update_sigma_saturating(Scalar xi_star_sq, Scalar gamma_diff) {
  const Scalar value = xi_star_sq + gamma_diff;
  if (value >= 0) return {value, false};
  const Scalar scale = std::max(std::abs(xi_star_sq), std::abs(gamma_diff));
  return {Scalar(0), value < -Scalar(1e-12) * std::max(scale, Scalar(1))};
}

}  // namespace hyncg

// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Two-ball intersection bounds.
//
// If a point is known to lie in B(x, rho) and in B(y, sigma), and
// delta <= |x - y|, then it also lies in B(z, xi) for every convex
// combination z = (1 - lambda) x + lambda y, where
//
//   xi^2 = (1 - lambda) rho^2 + lambda sigma^2 - lambda (1 - lambda) delta^2.
//
// When additionally delta^2 >= |rho^2 - sigma^2|, the radius is minimized at
//
//   lambda* = (delta^2 + rho^2 - sigma^2) / (2 delta^2).
//
// All radii are carried squared; square roots are only taken for reporting.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hyncg/types.hpp"

namespace hyncg {

template <typename Scalar>
struct BallPairParams {
  Scalar rho_sq = 0;
  Scalar sigma_sq = 0;
  Scalar delta_sq = 0;

  static BallPairParams from_radii(Scalar rho, Scalar sigma, Scalar delta) {
    return {rho * rho, sigma * sigma, delta * delta};
  }
};

template <typename Scalar>
struct EnclosingBall {
  Scalar lambda = 0;
  Scalar radius_sq = 0;
};

namespace detail {

template <typename Scalar>
void require_nonnegative(const BallPairParams<Scalar>& params) {
  if (!(params.rho_sq >= 0) || !(params.sigma_sq >= 0) || !(params.delta_sq >= 0)) {
    throw std::domain_error("ball radii and center distance must be nonnegative");
  }
}

// Slack allowed below zero before a squared radius counts as a violated
// precondition rather than roundoff: 1e-12 times the largest input (or 1).
template <typename Scalar>
Scalar negative_slack(const BallPairParams<Scalar>& params) {
  const Scalar scale = std::max({Scalar(1), params.rho_sq, params.sigma_sq, params.delta_sq});
  return Scalar(1e-12) * scale;
}

template <typename Scalar>
Scalar clamp_radius_sq(Scalar value, const BallPairParams<Scalar>& params) {
  if (value >= 0) return value;
  if (value >= -negative_slack(params)) return Scalar(0);
  throw std::domain_error("squared radius " + std::to_string(static_cast<double>(value)) +
                          " is negative: the balls do not intersect");
}

template <typename Scalar>
void require_optimal_preconditions(const BallPairParams<Scalar>& params) {
  require_nonnegative(params);
  const Scalar gap = params.rho_sq - params.sigma_sq;
  if (params.delta_sq == 0) {
    if (gap != 0) throw std::domain_error("coincident centers with unequal radii");
    return;
  }
  if (params.delta_sq < std::abs(gap) - negative_slack(params)) {
    throw std::domain_error("optimal lambda requires delta^2 >= |rho^2 - sigma^2|");
  }
}

}  // namespace detail

template <typename Scalar>
Scalar combination_radius_sq(const BallPairParams<Scalar>& params, Scalar lambda) {
  detail::require_nonnegative(params);
  if (!(lambda >= 0 && lambda <= 1)) {
    throw std::domain_error("lambda must lie in [0, 1]");
  }
  const Scalar value = (1 - lambda) * params.rho_sq + lambda * params.sigma_sq -
                       lambda * (1 - lambda) * params.delta_sq;
  return detail::clamp_radius_sq(value, params);
}

/// Minimizer of combination_radius_sq over lambda. Requires
/// delta^2 >= |rho^2 - sigma^2|; coincident centers are only allowed when the
/// radii agree, in which case the midpoint is returned.
template <typename Scalar>
Scalar optimal_lambda(const BallPairParams<Scalar>& params) {
  detail::require_optimal_preconditions(params);
  const Scalar gap = params.rho_sq - params.sigma_sq;
  if (params.delta_sq == 0) return Scalar(0.5);
  const Scalar lambda = (params.delta_sq + gap) / (2 * params.delta_sq);
  return std::clamp(lambda, Scalar(0), Scalar(1));
}

template <typename Scalar>
Scalar optimal_radius_sq(const BallPairParams<Scalar>& params) {
  detail::require_optimal_preconditions(params);
  if (params.delta_sq == 0) return params.rho_sq;
  const Scalar gap = params.rho_sq - params.sigma_sq;
  const Scalar value = (2 * params.rho_sq + 2 * params.sigma_sq - params.delta_sq -
                        gap * gap / params.delta_sq) /
                       4;
  return detail::clamp_radius_sq(value, params);
}

template <typename Scalar>
EnclosingBall<Scalar> optimal_enclosing_ball(const BallPairParams<Scalar>& params) {
  return {optimal_lambda(params), optimal_radius_sq(params)};
}

template <typename Scalar>
VectorX<Scalar> enclosing_center(const VectorX<Scalar>& x, const VectorX<Scalar>& y,
                                 Scalar lambda) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("enclosing_center: dimension mismatch");
  }
  if (!(lambda >= 0 && lambda <= 1)) {
    throw std::domain_error("lambda must lie in [0, 1]");
  }
  return (1 - lambda) * x + lambda * y;
}

}  // namespace hyncg

// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "hyncg/objective.hpp"

namespace hyncg {

template <typename Scalar>
struct LineSearchResult {
  Scalar alpha = 0;
  LinePoint<Scalar> point;  // phi and its derivatives at alpha
  int evaluations = 0;
  bool converged = false;
};

template <typename Scalar>
struct LineSearchOptions {
  Scalar tol = Scalar(1e-8);  // on |phi'(alpha)| / |phi'(0)|
  int max_inner = 200;
  int max_expansions = 60;
};

/// Newton's method on phi' safeguarded by bisection.
///
/// Starts from the Newton step at 0 (or alpha = 1 without positive
/// curvature). Until phi' changes sign the bracket is open on the right and a
/// Newton step is taken only if it moves forward, otherwise alpha doubles.
/// Once bracketed, Newton iterates outside the bracket are replaced by the
/// midpoint, as is any step after two iterations that failed to halve the
/// bracket. Every call to phi counts as one evaluation, including alpha = 0
/// unless `at_zero` is supplied by the caller.
template <typename Scalar>
LineSearchResult<Scalar> line_search(const LineFunction<Scalar>& phi,
                                     const LineSearchOptions<Scalar>& opts = {},
                                     std::optional<LinePoint<Scalar>> at_zero = std::nullopt) {
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  LineSearchResult<Scalar> res;
  LinePoint<Scalar> p0;
  if (at_zero) {
    p0 = *at_zero;
  } else {
    p0 = phi.evaluate(Scalar(0));
    ++res.evaluations;
  }
  if (!std::isfinite(static_cast<double>(p0.slope))) {
    throw std::domain_error("line_search: non-finite directional derivative");
  }
  if (!(p0.slope < 0)) throw std::invalid_argument("line_search: not a descent direction");

  const Scalar target = opts.tol * std::abs(p0.slope);
  res.alpha = 0;
  res.point = p0;

  auto newton_from = [](Scalar alpha, const LinePoint<Scalar>& p) -> std::optional<Scalar> {
    if (!(p.curvature > 0)) return std::nullopt;
    const Scalar next = alpha - p.slope / p.curvature;
    if (!std::isfinite(static_cast<double>(next))) return std::nullopt;
    return next;
  };

  Scalar lo = 0;
  Scalar hi = inf;
  Scalar alpha = newton_from(Scalar(0), p0).value_or(Scalar(1));
  if (!(alpha > 0)) alpha = Scalar(1);
  int expansions = 0;
  int slow_steps = 0;
  Scalar width_before = inf;

  while (res.evaluations < opts.max_inner) {
    const LinePoint<Scalar> p = phi.evaluate(alpha);
    ++res.evaluations;
    const bool finite = std::isfinite(static_cast<double>(p.value)) &&
                        std::isfinite(static_cast<double>(p.slope));
    if (finite && std::abs(p.slope) < std::abs(res.point.slope) && p.value <= p0.value) {
      res.alpha = alpha;
      res.point = p;
    }
    if (finite && std::abs(p.slope) <= target) {
      res.alpha = alpha;
      res.point = p;
      res.converged = true;
      return res;
    }
    if (!finite || p.slope > 0) {
      hi = alpha;
    } else {
      lo = alpha;
    }

    std::optional<Scalar> newton = finite ? newton_from(alpha, p) : std::nullopt;
    if (hi == inf) {
      if (newton && *newton > alpha) {
        alpha = *newton;
      } else {
        if (++expansions > opts.max_expansions) break;
        alpha *= 2;
      }
      continue;
    }

    const Scalar width = hi - lo;
    if (!(width > 0) || width <= std::numeric_limits<Scalar>::epsilon() * hi) break;
    slow_steps = width > width_before / 2 ? slow_steps + 1 : 0;
    width_before = width;
    if (newton && *newton > lo && *newton < hi && slow_steps < 2) {
      alpha = *newton;
    } else {
      alpha = lo + width / 2;
      slow_steps = 0;
    }
  }
  return res;
}

}  // namespace hyncg

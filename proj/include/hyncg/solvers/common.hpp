// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hyncg/line_search.hpp"
#include "hyncg/objective.hpp"
#include "hyncg/potential.hpp"

namespace hyncg {

enum class StepKind { init, gd, ag, cg, ncg, cg_accepted, gd_fallback };

inline const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::init:
      return "init";
    case StepKind::gd:
      return "gd";
    case StepKind::ag:
      return "ag";
    case StepKind::cg:
      return "cg";
    case StepKind::ncg:
      return "ncg";
    case StepKind::cg_accepted:
      return "cg_accepted";
    case StepKind::gd_fallback:
      return "gd_fallback";
  }
  return "?";
}

/// One trace row. `inner` is the cost charged to this outer iteration under
/// the counting rules of each method; `cumulative` is the running sum.
struct IterationRecord {
  long outer = 0;
  StepKind kind = StepKind::init;
  double f = 0;
  double grad_norm = 0;
  double sigma_sq = std::numeric_limits<double>::quiet_NaN();
  long inner = 0;
  long cumulative = 0;
};

/// What an observer sees after each outer iteration. Pointers are null when
/// the method has no such quantity.
template <typename Scalar>
struct IterateView {
  long outer = 0;
  StepKind kind = StepKind::init;
  const VectorX<Scalar>* x = nullptr;
  const VectorX<Scalar>* y_offset = nullptr;  // y_k - x_k
  const VectorX<Scalar>* direction = nullptr;  // the p that produced x_k
  const VectorX<Scalar>* gradient = nullptr;  // at x_k (at w_k for AG)
  Scalar f = 0;
  Scalar sigma_sq = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar prev_residual_sq = 0;  // |r_{k-1}|^2 (linear CG)
  YBranch branch = YBranch::shrink;
};

template <typename Scalar>
struct SolverOptions {
  Scalar tol = Scalar(1e-8);
  long max_outer = 100000;
  LineSearchOptions<Scalar> line;
  bool record_trace = true;
  std::function<void(const IterateView<Scalar>&)> observer;
};

template <typename Scalar>
struct SolveResult {
  VectorX<Scalar> x;
  Scalar f = 0;
  Scalar grad_norm = 0;
  bool converged = false;
  long iterations = 0;  // counting rule of the method
  long outer_iterations = 0;
  long cg_accepted = 0;
  long gd_fallbacks = 0;
  long potential_violations = 0;
  long line_search_failures = 0;
  std::vector<IterationRecord> trace;
  std::string diagnostic;
};

namespace detail {

template <typename Scalar>
bool all_finite(const VectorX<Scalar>& v) {
  return v.allFinite();
}

template <typename Scalar>
void push_record(SolveResult<Scalar>& res, const SolverOptions<Scalar>& opts, long outer,
                 StepKind kind, Scalar f, Scalar grad_norm, Scalar sigma_sq, long inner) {
  res.iterations += inner;
  if (!opts.record_trace) return;
  res.trace.push_back({outer, kind, static_cast<double>(f), static_cast<double>(grad_norm),
                       static_cast<double>(sigma_sq), inner, res.iterations});
}

template <typename Scalar>
bool check_finite(SolveResult<Scalar>& res, Scalar f, const VectorX<Scalar>& g) {
  if (std::isfinite(static_cast<double>(f)) && all_finite(g)) return true;
  res.diagnostic = "non-finite objective or gradient";
  return false;
}

/// GD dogleg: from x, the gradient step to obx = x - g/L, then an exact line
/// search on the line through obx and y. Returns the displacement x_k - x_{k-1}
/// formed from offsets only.
template <typename Scalar>
struct DoglegStep {
  VectorX<Scalar> step;
  int evaluations = 0;
  bool converged = true;
};

template <typename Scalar>
DoglegStep<Scalar> dogleg_step(const Objective<Scalar>& problem, const VectorX<Scalar>& x,
                               const VectorX<Scalar>& g, const VectorX<Scalar>& y_next_offset,
                               const LineSearchOptions<Scalar>& ls) {
  const Scalar big_l = problem.smoothness();
  DoglegStep<Scalar> out;
  const VectorX<Scalar> obx_offset = -g / big_l;
  const VectorX<Scalar> d = y_next_offset - obx_offset;  // y - obx
  if (d.squaredNorm() == 0) {
    out.step = obx_offset;
    return out;
  }
  const VectorX<Scalar> obx = x + obx_offset;
  const auto phi = problem.restrict_to_line(obx, d);
  const LinePoint<Scalar> p0 = phi->evaluate(Scalar(0));
  out.evaluations = 1;
  Scalar t = 0;
  if (p0.slope < 0) {
    const auto r = line_search<Scalar>(*phi, ls, p0);
    out.evaluations += r.evaluations;
    out.converged = r.converged;
    t = r.alpha;
  } else if (p0.slope > 0) {
    const ReversedLine<Scalar> back(*phi);
    const auto r = line_search<Scalar>(back, ls, LinePoint<Scalar>{p0.value, -p0.slope, p0.curvature});
    out.evaluations += r.evaluations;
    out.converged = r.converged;
    t = -r.alpha;
  }
  out.step = obx_offset + t * d;
  return out;
}

}  // namespace detail

}  // namespace hyncg

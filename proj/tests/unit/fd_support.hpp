// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "hyncg/objective.hpp"

namespace fd {

using hyncg::VectorX;

inline VectorX<double> random_vector(std::mt19937_64& rng, hyncg::Index n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  VectorX<double> v(n);
  for (hyncg::Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

// Central difference of f along unit direction u, compared with g^T u.
// Relative error against max(|g^T u|, |g| * 1e-3) so that near-orthogonal
// probes do not blow up the ratio.
inline double directional_gradient_error(const hyncg::Objective<double>& f,
                                         const VectorX<double>& x, const VectorX<double>& u,
                                         double h) {
  const double fd = (f.value(x + h * u) - f.value(x - h * u)) / (2 * h);
  const VectorX<double> g = f.gradient(x);
  const double exact = g.dot(u);
  return std::abs(fd - exact) / std::max(std::abs(exact), 1e-3 * g.norm());
}

inline double hvp_error(const hyncg::Objective<double>& f, const VectorX<double>& x,
                        const VectorX<double>& d, double h) {
  const VectorX<double> fd = (f.gradient(x + h * d) - f.gradient(x - h * d)) / (2 * h);
  const VectorX<double> hv = f.hessian_vec(x, d);
  return (fd - hv).norm() / std::max(hv.norm(), 1e-12);
}

}  // namespace fd

// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hyncg/objective.hpp"

namespace hyncg {

/// The first `count` primes in increasing order.
std::vector<std::int64_t> first_primes(std::size_t count);

/// Selected rows of the n x n orthonormal DCT-II matrix
///
///   C(k, j) = s_k cos(pi (j + 1/2) k / n),  s_0 = sqrt(1/n), s_k = sqrt(2/n),
///
/// with rows numbered 1..n (row 1 is the constant vector). Both the operator
/// and its adjoint run through a full fast transform, O(n log n).
class DctRowSubset {
 public:
  DctRowSubset(Index n, std::vector<std::int64_t> one_based_rows);
  ~DctRowSubset();
  DctRowSubset(DctRowSubset&&) noexcept;
  DctRowSubset& operator=(DctRowSubset&&) noexcept;
  DctRowSubset(const DctRowSubset&) = delete;
  DctRowSubset& operator=(const DctRowSubset&) = delete;

  Index cols() const { return n_; }
  Index rows() const { return static_cast<Index>(rows_.size()); }
  const std::vector<std::int64_t>& selected_rows() const { return rows_; }

  VectorX<double> apply(const VectorX<double>& x) const;
  VectorX<double> adjoint(const VectorX<double>& y) const;

  /// Full orthonormal DCT-II and its inverse.
  VectorX<double> forward(const VectorX<double>& x) const;
  VectorX<double> inverse(const VectorX<double>& coefficients) const;

 private:
  struct Plans;
  Index n_;
  std::vector<std::int64_t> rows_;
  std::unique_ptr<Plans> plans_;
};

/// Smoothed basis pursuit denoising:
///   f(x) = |A x - b|^2 + lambda sum_i sqrt(x_i^2 + delta).
class AbpdnProblem final : public Objective<double> {
 public:
  using Vector = VectorX<double>;

  AbpdnProblem(DctRowSubset op, Vector b, double lambda_reg, double delta_smooth, double ell,
               double big_l);

  const DctRowSubset& op() const { return op_; }
  const Vector& rhs() const { return b_; }
  double lambda_reg() const { return lambda_; }
  double delta_smooth() const { return delta_; }

  Index dimension() const override { return op_.cols(); }
  double strong_convexity() const override { return ell_; }
  double smoothness() const override { return big_l_; }

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;
  Vector hessian_vec(const Vector& x, const Vector& d) const override;
  double curvature(const Vector& x, const Vector& d) const override;
  std::unique_ptr<LineFunction<double>> restrict_to_line(const Vector& origin,
                                                         const Vector& direction) const override;

  /// A x (not the residual, so that images combine linearly).
  Vector linear_image(const Vector& x) const override;
  double value_from_image(const Vector& x, const Vector& image) const override;
  double value_and_gradient_from_image(const Vector& x, const Vector& image,
                                       Vector& grad) const override;

 private:
  DctRowSubset op_;
  Vector b_;
  double lambda_;
  double delta_;
  double ell_;
  double big_l_;
};

struct AbpdnModuli {
  double ell;
  double big_l;
  double trust_radius;
};

/// Analytic Hessian bounds for the smoothed problem. L = 2 + lambda / sqrt(delta)
/// (|2 A^T A| = 2 for orthonormal rows, and the smoothing term peaks at x = 0);
/// ell = lambda delta / (R^2 + delta)^{3/2}, its smallest value over |x|_inf <= R,
/// with R = max(1, 2 |x0 - xhat|) and xhat = x0 - grad f(x0) / L.
AbpdnModuli abpdn_moduli(const DctRowSubset& op, const VectorX<double>& b, double lambda_reg,
                         double delta_smooth, const VectorX<double>& x0);

/// n must be a power of 4; m = sqrt(n) rows numbered by the first m primes;
/// b_i = sin(i^2), i = 1..m. Moduli are fixed from the start point x0 (zero
/// when empty).
AbpdnProblem make_abpdn(Index n, double delta_smooth, double lambda_reg = 1e-3,
                        const VectorX<double>& x0 = VectorX<double>());

}  // namespace hyncg

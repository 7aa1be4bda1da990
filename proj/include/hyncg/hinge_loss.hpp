// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "hyncg/objective.hpp"

namespace hyncg {

struct HingeValue {
  double value;
  double first;
  double second;
};

/// Quadratically smoothed hinge:
///   h(v) = 0.5 - v        for v <= 0
///          (1 - v)^2 / 2  for 0 <= v <= 1
///          0              for v >= 1
/// h'' is reported as 1 on [0, 1) and 0 elsewhere (right limit at the kinks).
HingeValue hinge_h(double v);

/// h(to) - h(from), integrated piecewise so that no two large values are
/// subtracted.
double hinge_difference(double from, double to);

/// f(x) = sum_i h(b_i (A x)_i) + lambda |x|^2 / 2 with labels b_i = +-1.
///
/// ell = lambda; L = lambda + |A^T A|, the norm estimated by power iteration
/// (h'' <= 1).
class HingeLossProblem final : public Objective<double> {
 public:
  using Vector = VectorX<double>;
  using Matrix = MatrixX<double>;

  HingeLossProblem(Matrix a, Vector labels, double lambda_reg);

  const Matrix& matrix() const { return a_; }
  const Vector& labels() const { return labels_; }
  double lambda_reg() const { return lambda_; }
  double gram_norm() const { return gram_norm_; }

  Index dimension() const override { return a_.cols(); }
  double strong_convexity() const override { return lambda_; }
  double smoothness() const override { return lambda_ + gram_norm_; }

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double value_and_gradient(const Vector& x, Vector& grad) const override;
  Vector hessian_vec(const Vector& x, const Vector& d) const override;
  double curvature(const Vector& x, const Vector& d) const override;
  std::unique_ptr<LineFunction<double>> restrict_to_line(const Vector& origin,
                                                         const Vector& direction) const override;

  /// Margins b o (A x).
  Vector linear_image(const Vector& x) const override;
  double value_from_image(const Vector& x, const Vector& margins) const override;
  double value_and_gradient_from_image(const Vector& x, const Vector& margins,
                                       Vector& grad) const override;

 private:
  Matrix a_;
  Vector labels_;
  double lambda_;
  double gram_norm_ = 0.0;
};

/// |A^T A| by power iteration from the normalized all-ones vector, stopped
/// when the Rayleigh quotient changes by less than rel_tol.
double gram_norm_estimate(const MatrixX<double>& a, double rel_tol = 1e-12,
                          int max_iterations = 500);

/// Synthetic half-space data: each label is +-1 with probability 1/2 and the
/// row is label * [1, ..., 1] / sqrt(n) plus N(0, noise_sigma^2 I) noise.
/// The output is a pure function of the arguments.
HingeLossProblem make_hinge_loss(Index m, Index n, double lambda_reg, double noise_sigma,
                                 std::uint64_t seed);

}  // namespace hyncg

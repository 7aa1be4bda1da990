// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hyncg/objective.hpp"
#include "hyncg/random.hpp"

namespace hyncg {

/// f(x) = x^T A x / 2 - b^T x with A symmetric positive definite, stored
/// densely. ell and L are the extreme eigenvalues of A and the minimizer is
/// obtained by a Cholesky solve.
template <typename Scalar>
class QuadraticProblem final : public Objective<Scalar> {
 public:
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;

  QuadraticProblem(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != a_.cols() || a_.rows() != b_.size() || a_.rows() == 0) {
      throw std::invalid_argument("QuadraticProblem: dimension mismatch");
    }
    const Scalar asym = (a_ - a_.transpose()).cwiseAbs().maxCoeff();
    if (asym > Scalar(1e-12) * a_.cwiseAbs().maxCoeff()) {
      throw std::invalid_argument("QuadraticProblem: operator is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a_, Eigen::EigenvaluesOnly);
    ell_ = eig.eigenvalues()(0);
    big_l_ = eig.eigenvalues()(a_.rows() - 1);
    if (!(ell_ > 0)) {
      throw std::invalid_argument("QuadraticProblem: operator is not positive definite");
    }
    Eigen::LLT<Matrix> llt(a_);
    minimizer_ = llt.solve(b_);
  }

  /// For operators built from a known spectrum, where the eigenvalues need not
  /// be recomputed.
  QuadraticProblem(Matrix a, Vector b, Scalar ell, Scalar big_l)
      : a_(std::move(a)), b_(std::move(b)), ell_(ell), big_l_(big_l) {
    if (a_.rows() != a_.cols() || a_.rows() != b_.size()) {
      throw std::invalid_argument("QuadraticProblem: dimension mismatch");
    }
    if (!(ell_ > 0) || !(big_l_ >= ell_)) {
      throw std::invalid_argument("QuadraticProblem: need 0 < ell <= L");
    }
    Eigen::LLT<Matrix> llt(a_);
    minimizer_ = llt.solve(b_);
  }

  const Matrix& matrix() const { return a_; }
  const Vector& rhs() const { return b_; }

  Index dimension() const override { return a_.rows(); }
  Scalar strong_convexity() const override { return ell_; }
  Scalar smoothness() const override { return big_l_; }

  Scalar value(const Vector& x) const override { return x.dot(a_ * x) / 2 - b_.dot(x); }

  Vector gradient(const Vector& x) const override { return a_ * x - b_; }

  Scalar value_and_gradient(const Vector& x, Vector& grad) const override {
    const Vector ax = a_ * x;
    grad = ax - b_;
    return x.dot(ax) / 2 - b_.dot(x);
  }

  Vector hessian_vec(const Vector& /*x*/, const Vector& d) const override { return a_ * d; }

  Scalar curvature(const Vector& /*x*/, const Vector& d) const override {
    return d.dot(a_ * d);
  }

  std::unique_ptr<LineFunction<Scalar>> restrict_to_line(const Vector& origin,
                                                         const Vector& direction) const override {
    Vector grad;
    const Scalar f0 = value_and_gradient(origin, grad);
    return std::make_unique<Line>(f0, grad.dot(direction), curvature(origin, direction));
  }

  std::optional<Vector> exact_minimizer() const override { return minimizer_; }

  /// f(x) - f(x*) = (x - x*)^T A (x - x*) / 2, free of cancellation.
  Scalar optimality_gap(const Vector& x) const {
    const Vector e = x - minimizer_;
    return e.dot(a_ * e) / 2;
  }

  Vector linear_image(const Vector& x) const override { return a_ * x; }

  Scalar value_from_image(const Vector& x, const Vector& image) const override {
    return x.dot(image) / 2 - b_.dot(x);
  }

  Scalar value_and_gradient_from_image(const Vector& x, const Vector& image,
                                       Vector& grad) const override {
    grad = image - b_;
    return x.dot(image) / 2 - b_.dot(x);
  }

 private:
  class Line final : public LineFunction<Scalar> {
   public:
    Line(Scalar value, Scalar slope, Scalar curvature)
        : value_(value), slope_(slope), curvature_(curvature) {}

    LinePoint<Scalar> evaluate(Scalar alpha) const override {
      return {value_ + difference(alpha), slope_ + alpha * curvature_, curvature_};
    }

    Scalar difference(Scalar alpha) const override {
      return alpha * (slope_ + alpha * curvature_ / 2);
    }

   private:
    Scalar value_;
    Scalar slope_;
    Scalar curvature_;
  };

  Matrix a_;
  Vector b_;
  Scalar ell_ = 0;
  Scalar big_l_ = 0;
  Vector minimizer_;
};

/// Q diag(eigenvalues) Q^T with Q the orthogonal factor of a Gaussian matrix,
/// and a Gaussian right-hand side.
template <typename Scalar>
QuadraticProblem<Scalar> make_quadratic_with_spectrum(const std::vector<double>& eigenvalues,
                                                      std::uint64_t seed) {
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;
  const Index n = static_cast<Index>(eigenvalues.size());
  if (n == 0) throw std::invalid_argument("empty spectrum");
  PortableRng rng(seed);
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) g(i, j) = Scalar(rng.normal());
  }
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  Vector diag(n);
  for (Index i = 0; i < n; ++i) diag(i) = Scalar(eigenvalues[static_cast<std::size_t>(i)]);
  Matrix a = q * diag.asDiagonal() * q.transpose();
  a = (a + a.transpose()).eval() / Scalar(2);
  Vector b(n);
  for (Index i = 0; i < n; ++i) b(i) = Scalar(rng.normal());
  const auto [lo, hi] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
  return QuadraticProblem<Scalar>(std::move(a), std::move(b), Scalar(*lo), Scalar(*hi));
}

enum class SpectrumShape { uniform, log_uniform };

/// Random SPD quadratic with spectrum in [1, kappa]. Both endpoints are
/// present; interior eigenvalues are drawn uniformly or log-uniformly.
/// Log-uniform spectra make CG iterates very sensitive to roundoff once
/// the extreme Ritz values settle.
template <typename Scalar>
QuadraticProblem<Scalar> make_random_quadratic(Index n, double kappa, std::uint64_t seed,
                                               SpectrumShape shape = SpectrumShape::uniform) {
  if (n < 1 || !(kappa >= 1)) throw std::invalid_argument("need n >= 1 and kappa >= 1");
  PortableRng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<double> eigenvalues(static_cast<std::size_t>(n));
  for (auto& e : eigenvalues) {
    const double u = rng.uniform();
    e = shape == SpectrumShape::uniform ? 1.0 + u * (kappa - 1.0) : std::exp(u * std::log(kappa));
  }
  eigenvalues.front() = 1.0;
  if (n > 1) eigenvalues.back() = kappa;
  return make_quadratic_with_spectrum<Scalar>(eigenvalues, seed);
}

}  // namespace hyncg

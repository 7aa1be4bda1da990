// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#include "hyncg/abpdn.hpp"

#include <cmath>
#include <stdexcept>

#include "hyncg/compensated.hpp"

namespace hyncg {

std::vector<std::int64_t> first_primes(std::size_t count) {
  std::vector<std::int64_t> primes;
  primes.reserve(count);
  for (std::int64_t candidate = 2; primes.size() < count; ++candidate) {
    bool prime = true;
    for (const std::int64_t p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

namespace {

class AbpdnLine final : public LineFunction<double> {
 public:
  AbpdnLine(VectorX<double> residual, VectorX<double> image_dir, VectorX<double> origin,
            VectorX<double> direction, double lambda, double delta)
      : residual_(std::move(residual)),
        image_dir_(std::move(image_dir)),
        origin_(std::move(origin)),
        direction_(std::move(direction)),
        lambda_(lambda),
        delta_(delta),
        res_dot_(residual_.dot(image_dir_)),
        res_sq_(residual_.squaredNorm()),
        image_sq_(image_dir_.squaredNorm()) {}

  LinePoint<double> evaluate(double alpha) const override {
    CompensatedSum<double> smooth;
    double slope = 0.0;
    double curvature = 0.0;
    for (Index i = 0; i < origin_.size(); ++i) {
      const double t = origin_(i) + alpha * direction_(i);
      const double q = t * t + delta_;
      const double root = std::sqrt(q);
      smooth += root;
      slope += t * direction_(i) / root;
      curvature += delta_ * direction_(i) * direction_(i) / (q * root);
    }
    const double value = res_sq_ + alpha * (2.0 * res_dot_ + alpha * image_sq_) +
                         lambda_ * smooth.get();
    return {value, 2.0 * (res_dot_ + alpha * image_sq_) + lambda_ * slope,
            2.0 * image_sq_ + lambda_ * curvature};
  }

  // sqrt(a) - sqrt(b) = (a - b) / (sqrt(a) + sqrt(b)) term by term.
  double difference(double alpha) const override {
    CompensatedSum<double> smooth;
    for (Index i = 0; i < origin_.size(); ++i) {
      const double o = origin_(i);
      const double d = direction_(i);
      if (d == 0.0) continue;
      const double t = o + alpha * d;
      const double num = alpha * d * (2.0 * o + alpha * d);
      smooth += num / (std::sqrt(t * t + delta_) + std::sqrt(o * o + delta_));
    }
    CompensatedSum<double> total;
    total += 2.0 * alpha * res_dot_;
    total += alpha * alpha * image_sq_;
    total += lambda_ * smooth.get();
    return total.get();
  }

 private:
  VectorX<double> residual_;
  VectorX<double> image_dir_;
  VectorX<double> origin_;
  VectorX<double> direction_;
  double lambda_;
  double delta_;
  double res_dot_;
  double res_sq_;
  double image_sq_;
};

}  // namespace

AbpdnProblem::AbpdnProblem(DctRowSubset op, Vector b, double lambda_reg, double delta_smooth,
                           double ell, double big_l)
    : op_(std::move(op)),
      b_(std::move(b)),
      lambda_(lambda_reg),
      delta_(delta_smooth),
      ell_(ell),
      big_l_(big_l) {
  if (b_.size() != op_.rows()) throw std::invalid_argument("AbpdnProblem: dimension mismatch");
  if (!(lambda_ >= 0.0) || !(delta_ > 0.0)) {
    throw std::invalid_argument("AbpdnProblem: need lambda >= 0 and delta > 0");
  }
  if (!(ell_ > 0.0) || !(big_l_ >= ell_)) {
    throw std::invalid_argument("AbpdnProblem: need 0 < ell <= L");
  }
}

AbpdnProblem::Vector AbpdnProblem::linear_image(const Vector& x) const { return op_.apply(x); }

double AbpdnProblem::value_from_image(const Vector& x, const Vector& image) const {
  CompensatedSum<double> smooth;
  for (Index i = 0; i < x.size(); ++i) smooth += std::sqrt(x(i) * x(i) + delta_);
  return (image - b_).squaredNorm() + lambda_ * smooth.get();
}

double AbpdnProblem::value_and_gradient_from_image(const Vector& x, const Vector& image,
                                                   Vector& grad) const {
  const Vector residual = image - b_;
  grad = 2.0 * op_.adjoint(residual);
  CompensatedSum<double> smooth;
  for (Index i = 0; i < x.size(); ++i) {
    const double root = std::sqrt(x(i) * x(i) + delta_);
    smooth += root;
    grad(i) += lambda_ * x(i) / root;
  }
  return residual.squaredNorm() + lambda_ * smooth.get();
}

double AbpdnProblem::value(const Vector& x) const { return value_from_image(x, op_.apply(x)); }

AbpdnProblem::Vector AbpdnProblem::gradient(const Vector& x) const {
  Vector grad;
  value_and_gradient(x, grad);
  return grad;
}

double AbpdnProblem::value_and_gradient(const Vector& x, Vector& grad) const {
  return value_and_gradient_from_image(x, op_.apply(x), grad);
}

AbpdnProblem::Vector AbpdnProblem::hessian_vec(const Vector& x, const Vector& d) const {
  Vector out = 2.0 * op_.adjoint(op_.apply(d));
  for (Index i = 0; i < x.size(); ++i) {
    const double q = x(i) * x(i) + delta_;
    out(i) += lambda_ * delta_ * d(i) / (q * std::sqrt(q));
  }
  return out;
}

double AbpdnProblem::curvature(const Vector& x, const Vector& d) const {
  double sum = 2.0 * op_.apply(d).squaredNorm();
  for (Index i = 0; i < x.size(); ++i) {
    const double q = x(i) * x(i) + delta_;
    sum += lambda_ * delta_ * d(i) * d(i) / (q * std::sqrt(q));
  }
  return sum;
}

std::unique_ptr<LineFunction<double>> AbpdnProblem::restrict_to_line(
    const Vector& origin, const Vector& direction) const {
  return std::make_unique<AbpdnLine>(op_.apply(origin) - b_, op_.apply(direction), origin,
                                     direction, lambda_, delta_);
}

AbpdnModuli abpdn_moduli(const DctRowSubset& op, const VectorX<double>& b, double lambda_reg,
                         double delta_smooth, const VectorX<double>& x0) {
  const double big_l = 2.0 + lambda_reg / std::sqrt(delta_smooth);
  VectorX<double> grad = 2.0 * op.adjoint(op.apply(x0) - b);
  for (Index i = 0; i < x0.size(); ++i) {
    grad(i) += lambda_reg * x0(i) / std::sqrt(x0(i) * x0(i) + delta_smooth);
  }
  const double radius = std::max(1.0, 2.0 * (grad / big_l).norm());
  const double q = radius * radius + delta_smooth;
  const double ell = lambda_reg * delta_smooth / (q * std::sqrt(q));
  return {ell, big_l, radius};
}

AbpdnProblem make_abpdn(Index n, double delta_smooth, double lambda_reg,
                        const VectorX<double>& x0) {
  if (n < 4) throw std::invalid_argument("make_abpdn: n must be a power of 4");
  Index m = 1;
  while (m * m < n) m *= 2;
  if (m * m != n) throw std::invalid_argument("make_abpdn: n must be a power of 4");
  DctRowSubset op(n, first_primes(static_cast<std::size_t>(m)));
  VectorX<double> b(m);
  for (Index i = 1; i <= m; ++i) b(i - 1) = std::sin(static_cast<double>(i * i));
  const VectorX<double> start = x0.size() == 0 ? VectorX<double>::Zero(n) : x0;
  if (start.size() != n) throw std::invalid_argument("make_abpdn: x0 has the wrong size");
  const AbpdnModuli moduli = abpdn_moduli(op, b, lambda_reg, delta_smooth, start);
  return AbpdnProblem(std::move(op), std::move(b), lambda_reg, delta_smooth, moduli.ell,
                      moduli.big_l);
}

}  // namespace hyncg

// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#include "hyncg/hinge_loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyncg/compensated.hpp"
#include "hyncg/random.hpp"

namespace hyncg {

HingeValue hinge_h(double v) {
  if (v <= 0.0) return {0.5 - v, -1.0, v == 0.0 ? 1.0 : 0.0};
  if (v < 1.0) {
    const double u = 1.0 - v;
    return {u * u / 2.0, -u, 1.0};
  }
  return {0.0, 0.0, 0.0};
}

double hinge_difference(double from, double to) {
  if (from == to) return 0.0;
  const double lo = std::min(from, to);
  const double hi = std::max(from, to);
  double integral = 0.0;
  // h' = -1 on (-inf, 0]
  if (lo < 0.0) integral -= std::min(hi, 0.0) - lo;
  // h'(t) = t - 1 on [0, 1]
  const double a = std::max(lo, 0.0);
  const double b = std::min(hi, 1.0);
  if (a < b) integral += (b - a) * ((a + b) / 2.0 - 1.0);
  return from < to ? integral : -integral;
}

namespace {

class HingeLine final : public LineFunction<double> {
 public:
  HingeLine(VectorX<double> margins, VectorX<double> margin_rates, double origin_dot_dir,
            double origin_sq, double dir_sq, double lambda)
      : margins_(std::move(margins)),
        rates_(std::move(margin_rates)),
        origin_dot_dir_(origin_dot_dir),
        origin_sq_(origin_sq),
        dir_sq_(dir_sq),
        lambda_(lambda) {}

  LinePoint<double> evaluate(double alpha) const override {
    CompensatedSum<double> value;
    double slope = 0.0;
    double curvature = 0.0;
    for (Index i = 0; i < margins_.size(); ++i) {
      const HingeValue h = hinge_h(margins_(i) + alpha * rates_(i));
      value += h.value;
      slope += h.first * rates_(i);
      curvature += h.second * rates_(i) * rates_(i);
    }
    const double norm_sq = origin_sq_ + alpha * (2.0 * origin_dot_dir_ + alpha * dir_sq_);
    value += lambda_ * norm_sq / 2.0;
    return {value.get(), slope + lambda_ * (origin_dot_dir_ + alpha * dir_sq_),
            curvature + lambda_ * dir_sq_};
  }

  double difference(double alpha) const override {
    CompensatedSum<double> sum;
    for (Index i = 0; i < margins_.size(); ++i) {
      sum += hinge_difference(margins_(i), margins_(i) + alpha * rates_(i));
    }
    sum += lambda_ * alpha * (origin_dot_dir_ + alpha * dir_sq_ / 2.0);
    return sum.get();
  }

 private:
  VectorX<double> margins_;
  VectorX<double> rates_;
  double origin_dot_dir_;
  double origin_sq_;
  double dir_sq_;
  double lambda_;
};

}  // namespace

HingeLossProblem::HingeLossProblem(Matrix a, Vector labels, double lambda_reg)
    : a_(std::move(a)), labels_(std::move(labels)), lambda_(lambda_reg) {
  if (a_.rows() != labels_.size() || a_.rows() == 0 || a_.cols() == 0) {
    throw std::invalid_argument("HingeLossProblem: dimension mismatch");
  }
  if (!(lambda_ > 0.0)) throw std::invalid_argument("HingeLossProblem: lambda must be positive");
  for (Index i = 0; i < labels_.size(); ++i) {
    if (labels_(i) != 1.0 && labels_(i) != -1.0) {
      throw std::invalid_argument("HingeLossProblem: labels must be +1 or -1");
    }
  }
  gram_norm_ = gram_norm_estimate(a_);
}

HingeLossProblem::Vector HingeLossProblem::linear_image(const Vector& x) const {
  return labels_.cwiseProduct(a_ * x);
}

double HingeLossProblem::value_from_image(const Vector& x, const Vector& margins) const {
  CompensatedSum<double> sum;
  for (Index i = 0; i < margins.size(); ++i) sum += hinge_h(margins(i)).value;
  sum += lambda_ * x.squaredNorm() / 2.0;
  return sum.get();
}

double HingeLossProblem::value_and_gradient_from_image(const Vector& x, const Vector& margins,
                                                       Vector& grad) const {
  CompensatedSum<double> sum;
  Vector weights(margins.size());
  for (Index i = 0; i < margins.size(); ++i) {
    const HingeValue h = hinge_h(margins(i));
    sum += h.value;
    weights(i) = labels_(i) * h.first;
  }
  grad.noalias() = a_.transpose() * weights;
  grad += lambda_ * x;
  sum += lambda_ * x.squaredNorm() / 2.0;
  return sum.get();
}

double HingeLossProblem::value(const Vector& x) const {
  return value_from_image(x, linear_image(x));
}

HingeLossProblem::Vector HingeLossProblem::gradient(const Vector& x) const {
  Vector grad;
  value_and_gradient(x, grad);
  return grad;
}

double HingeLossProblem::value_and_gradient(const Vector& x, Vector& grad) const {
  return value_and_gradient_from_image(x, linear_image(x), grad);
}

HingeLossProblem::Vector HingeLossProblem::hessian_vec(const Vector& x, const Vector& d) const {
  const Vector margins = linear_image(x);
  Vector ad = a_ * d;
  for (Index i = 0; i < ad.size(); ++i) ad(i) *= hinge_h(margins(i)).second;
  Vector out = a_.transpose() * ad;
  out += lambda_ * d;
  return out;
}

double HingeLossProblem::curvature(const Vector& x, const Vector& d) const {
  const Vector margins = linear_image(x);
  const Vector ad = a_ * d;
  double sum = 0.0;
  for (Index i = 0; i < ad.size(); ++i) sum += hinge_h(margins(i)).second * ad(i) * ad(i);
  return sum + lambda_ * d.squaredNorm();
}

std::unique_ptr<LineFunction<double>> HingeLossProblem::restrict_to_line(
    const Vector& origin, const Vector& direction) const {
  return std::make_unique<HingeLine>(linear_image(origin), linear_image(direction),
                                     origin.dot(direction), origin.squaredNorm(),
                                     direction.squaredNorm(), lambda_);
}

double gram_norm_estimate(const MatrixX<double>& a, double rel_tol, int max_iterations) {
  VectorX<double> v = VectorX<double>::Ones(a.cols()) / std::sqrt(static_cast<double>(a.cols()));
  double estimate = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    const VectorX<double> av = a * v;
    const double rayleigh = av.squaredNorm();
    VectorX<double> next = a.transpose() * av;
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    v = next / norm;
    if (it > 0 && std::abs(rayleigh - estimate) <= rel_tol * rayleigh) return rayleigh;
    estimate = rayleigh;
  }
  return estimate;
}

HingeLossProblem make_hinge_loss(Index m, Index n, double lambda_reg, double noise_sigma,
                                 std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("make_hinge_loss: need m, n >= 1");
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("make_hinge_loss: noise must be >= 0");
  PortableRng rng(seed);
  MatrixX<double> a(m, n);
  VectorX<double> labels(m);
  const double center = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index i = 0; i < m; ++i) {
    labels(i) = rng.sign();
    for (Index j = 0; j < n; ++j) a(i, j) = labels(i) * center + noise_sigma * rng.normal();
  }
  return HingeLossProblem(std::move(a), std::move(labels), lambda_reg);
}

}  // namespace hyncg

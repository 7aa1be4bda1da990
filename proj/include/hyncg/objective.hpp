// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>

#include "hyncg/types.hpp"

namespace hyncg {

/// phi(alpha) and its first two derivatives at one point of a line.
template <typename Scalar>
struct LinePoint {
  Scalar value = 0;
  Scalar slope = 0;
  Scalar curvature = 0;
};

/// Restriction phi(alpha) = f(origin + alpha * direction) of an objective to
/// a line. Implementations precompute whatever makes repeated evaluation
/// cheap (for data-fitting objectives, the images of origin and direction).
template <typename Scalar>
class LineFunction {
 public:
  virtual ~LineFunction() = default;

  virtual LinePoint<Scalar> evaluate(Scalar alpha) const = 0;

  /// phi(alpha) - phi(0), computed without subtracting two nearly equal
  /// function values. Relative accuracy is kept as alpha -> 0.
  virtual Scalar difference(Scalar alpha) const = 0;
};

/// Smooth, strongly convex objective with known moduli ell <= L.
///
/// The "linear image" hooks let fixed-step methods carry K x for a problem
/// of the form F(K x) + R(x) through affine recurrences instead of
/// recomputing it; the default image is empty and every evaluation falls back
/// to value()/gradient().
template <typename Scalar>
class Objective {
 public:
  using Vector = VectorX<Scalar>;

  virtual ~Objective() = default;

  virtual Index dimension() const = 0;
  virtual Scalar strong_convexity() const = 0;
  virtual Scalar smoothness() const = 0;

  virtual Scalar value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual Vector hessian_vec(const Vector& x, const Vector& d) const = 0;

  virtual Scalar value_and_gradient(const Vector& x, Vector& grad) const {
    grad = gradient(x);
    return value(x);
  }

  /// d^T H(x) d.
  virtual Scalar curvature(const Vector& x, const Vector& d) const {
    return d.dot(hessian_vec(x, d));
  }

  virtual std::unique_ptr<LineFunction<Scalar>> restrict_to_line(const Vector& origin,
                                                                 const Vector& direction) const;

  virtual std::optional<Vector> exact_minimizer() const { return std::nullopt; }

  virtual Vector linear_image(const Vector& /*x*/) const { return Vector(); }

  virtual Scalar value_from_image(const Vector& x, const Vector& /*image*/) const {
    return value(x);
  }

  virtual Scalar value_and_gradient_from_image(const Vector& x, const Vector& /*image*/,
                                               Vector& grad) const {
    return value_and_gradient(x, grad);
  }
};

/// Line restriction built only from value/gradient/hessian_vec. Its
/// difference() is the plain subtraction of two function values.
template <typename Scalar>
class GenericLineFunction final : public LineFunction<Scalar> {
 public:
  GenericLineFunction(const Objective<Scalar>& objective, VectorX<Scalar> origin,
                      VectorX<Scalar> direction)
      : objective_(objective),
        origin_(std::move(origin)),
        direction_(std::move(direction)),
        value_at_origin_(objective_.value(origin_)) {}

  LinePoint<Scalar> evaluate(Scalar alpha) const override {
    const VectorX<Scalar> point = origin_ + alpha * direction_;
    VectorX<Scalar> grad;
    const Scalar value = objective_.value_and_gradient(point, grad);
    return {value, grad.dot(direction_), objective_.curvature(point, direction_)};
  }

  Scalar difference(Scalar alpha) const override {
    return objective_.value(origin_ + alpha * direction_) - value_at_origin_;
  }

 private:
  const Objective<Scalar>& objective_;
  VectorX<Scalar> origin_;
  VectorX<Scalar> direction_;
  Scalar value_at_origin_;
};

template <typename Scalar>
std::unique_ptr<LineFunction<Scalar>> Objective<Scalar>::restrict_to_line(
    const Vector& origin, const Vector& direction) const {
  return std::make_unique<GenericLineFunction<Scalar>>(*this, origin, direction);
}

/// phi(-alpha) of a wrapped line: the same line traversed backwards.
template <typename Scalar>
class ReversedLine final : public LineFunction<Scalar> {
 public:
  explicit ReversedLine(const LineFunction<Scalar>& base) : base_(base) {}

  LinePoint<Scalar> evaluate(Scalar alpha) const override {
    const LinePoint<Scalar> p = base_.evaluate(-alpha);
    return {p.value, -p.slope, p.curvature};
  }

  Scalar difference(Scalar alpha) const override { return base_.difference(-alpha); }

 private:
  const LineFunction<Scalar>& base_;
};

}  // namespace hyncg

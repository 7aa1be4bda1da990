// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace hyncg {

/// Neumaier's variant of Kahan summation. Robust when an addend is larger
/// in magnitude than the running sum.
template <typename Scalar>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(Scalar init) : sum_(init) {}

  void add(Scalar value) {
    const Scalar t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(Scalar value) {
    add(value);
    return *this;
  }

  Scalar get() const { return sum_ + compensation_; }

 private:
  Scalar sum_ = 0;
  Scalar compensation_ = 0;
};

}  // namespace hyncg

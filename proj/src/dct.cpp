// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "hyncg/abpdn.hpp"

namespace hyncg {

namespace {

// The FFTW planner is not reentrant; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct DctRowSubset::Plans {
  fftw_plan forward = nullptr;  // REDFT10: Y_k = 2 sum_j x_j cos(pi k (j + 1/2) / n)
  fftw_plan inverse = nullptr;  // REDFT01: Y_j = X_0 + 2 sum_k X_k cos(pi k (j + 1/2) / n)

  explicit Plans(int n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    double* in = fftw_alloc_real(static_cast<std::size_t>(n));
    double* out = fftw_alloc_real(static_cast<std::size_t>(n));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward = fftw_plan_r2r_1d(n, in, out, FFTW_REDFT10, flags);
    inverse = fftw_plan_r2r_1d(n, in, out, FFTW_REDFT01, flags);
    fftw_free(in);
    fftw_free(out);
    if (forward == nullptr || inverse == nullptr) {
      throw std::runtime_error("DctRowSubset: FFTW planning failed");
    }
  }

  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (inverse != nullptr) fftw_destroy_plan(inverse);
  }
};

DctRowSubset::DctRowSubset(Index n, std::vector<std::int64_t> one_based_rows)
    : n_(n), rows_(std::move(one_based_rows)) {
  if (n_ < 1) throw std::invalid_argument("DctRowSubset: n must be positive");
  for (const std::int64_t r : rows_) {
    if (r < 1 || r > n_) throw std::invalid_argument("DctRowSubset: row index out of range");
  }
  plans_ = std::make_unique<Plans>(static_cast<int>(n_));
}

DctRowSubset::~DctRowSubset() = default;
DctRowSubset::DctRowSubset(DctRowSubset&&) noexcept = default;
DctRowSubset& DctRowSubset::operator=(DctRowSubset&&) noexcept = default;

VectorX<double> DctRowSubset::forward(const VectorX<double>& x) const {
  if (x.size() != n_) throw std::invalid_argument("DctRowSubset::forward: dimension mismatch");
  VectorX<double> in = x;
  VectorX<double> out(n_);
  fftw_execute_r2r(plans_->forward, in.data(), out.data());
  const double s0 = std::sqrt(1.0 / static_cast<double>(n_));
  const double sk = std::sqrt(2.0 / static_cast<double>(n_));
  out(0) *= s0 / 2.0;
  out.tail(n_ - 1) *= sk / 2.0;
  return out;
}

VectorX<double> DctRowSubset::inverse(const VectorX<double>& coefficients) const {
  if (coefficients.size() != n_) {
    throw std::invalid_argument("DctRowSubset::inverse: dimension mismatch");
  }
  const double s0 = std::sqrt(1.0 / static_cast<double>(n_));
  const double sk = std::sqrt(2.0 / static_cast<double>(n_));
  VectorX<double> in(n_);
  in(0) = s0 * coefficients(0);
  in.tail(n_ - 1) = (sk / 2.0) * coefficients.tail(n_ - 1);
  VectorX<double> out(n_);
  fftw_execute_r2r(plans_->inverse, in.data(), out.data());
  return out;
}

VectorX<double> DctRowSubset::apply(const VectorX<double>& x) const {
  const VectorX<double> full = forward(x);
  VectorX<double> y(rows());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    y(static_cast<Index>(i)) = full(static_cast<Index>(rows_[i] - 1));
  }
  return y;
}

VectorX<double> DctRowSubset::adjoint(const VectorX<double>& y) const {
  if (y.size() != rows()) throw std::invalid_argument("DctRowSubset::adjoint: dimension mismatch");
  VectorX<double> full = VectorX<double>::Zero(n_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    full(static_cast<Index>(rows_[i] - 1)) += y(static_cast<Index>(i));
  }
  return inverse(full);
}

}  // namespace hyncg

// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "hyncg/bench.hpp"
#include "hyncg/oracle.hpp"
#include "hyncg/quadratic.hpp"
#include "hyncg/solvers.hpp"

namespace hyncg::bench {
namespace {

struct Sample {
  VectorX<double> x, y, p;
  double sigma_sq = 0;
  double prev_rr = 0;
};

template <typename Run>
std::vector<Sample> record(Run run) {
  std::vector<Sample> out;
  SolverOptions<double> o;
  o.tol = 1e-300;
  o.line.tol = 1e-12;
  o.observer = [&](const IterateView<double>& v) {
    Sample s;
    s.x = *v.x;
    if (v.y_offset) s.y = *v.x + *v.y_offset;
    if (v.direction) s.p = *v.direction;
    s.sigma_sq = v.sigma_sq;
    s.prev_rr = v.prev_residual_sq;
    out.push_back(std::move(s));
  };
  run(o);
  return out;
}

}  // namespace

std::vector<SelftestLine> run_selftest(const SelftestOptions& opts) {
  SelftestLine cg_ia{"cg iterates vs idealized algorithm", 0, 1e-8};
  SelftestLine y_tau{"idealized y vs x + tau p", 0, 1e-8};
  SelftestLine hy_cg{"hyncg iterates vs cg", 0, 1e-6};
  SelftestLine fallbacks{"hyncg gd fallbacks", 0, 0};
  SelftestLine dominance{"sigma^2 >= psi (gd, cg, hyncg)", 0, 1e-8};
  SelftestLine decrease{"sigma^2 contraction (gd, cg, hyncg)", 0, 1e-10};
  SelftestLine psi_decrease{"psi contraction (idealized)", 0, 1e-10};

  const long iters = opts.iterations;
  for (int c = 0; c < opts.count; ++c) {
    const auto q = make_random_quadratic<double>(opts.n, opts.kappa,
                                                 opts.seed + static_cast<std::uint64_t>(c));
    const VectorX<double> x0 = VectorX<double>::Zero(opts.n);
    const double scale = std::max(1.0, q.exact_minimizer()->norm());
    const double rate = 1.0 - std::sqrt(q.strong_convexity() / q.smoothness());

    const auto ia = ia_run<double>(q, x0, static_cast<int>(iters));
    SolveResult<double> hy_result;
    const auto cg = record([&](SolverOptions<double> o) {
      o.max_outer = iters;
      cg_run<double>(q, x0, o);
    });
    const auto hy = record([&](SolverOptions<double> o) {
      o.max_outer = iters;
      hy_result = hyncg_run<double>(q, x0, o);
    });
    const auto gd = record([&](SolverOptions<double> o) {
      o.max_outer = iters;
      gd_run<double>(q, x0, o);
    });
    fallbacks.worst = std::max<double>(fallbacks.worst, static_cast<double>(hy_result.gd_fallbacks));

    for (std::size_t k = 1; k < cg.size() && k < ia.size(); ++k) {
      cg_ia.worst = std::max(cg_ia.worst, (ia[k].x - cg[k].x).norm() / scale);
      const double tau = exact_tau(q, cg[k].x, cg[k].prev_rr);
      y_tau.worst = std::max(y_tau.worst, (ia[k].y - (cg[k].x + tau * cg[k].p)).norm() / scale);
      const double psi0 = exact_psi(q, ia[0].x, ia[0].y);
      const double excess = exact_psi(q, ia[k].x, ia[k].y) - rate * exact_psi(q, ia[k - 1].x, ia[k - 1].y);
      psi_decrease.worst = std::max(psi_decrease.worst, excess / psi0);
    }
    for (std::size_t k = 0; k < cg.size() && k < hy.size(); ++k)
      hy_cg.worst = std::max(hy_cg.worst, (hy[k].x - cg[k].x).norm() / scale);
    for (const auto* trace : {&gd, &cg, &hy}) {
      const double s0 = trace->front().sigma_sq;
      for (std::size_t k = 0; k < trace->size(); ++k) {
        const auto& s = (*trace)[k];
        dominance.worst = std::max(dominance.worst, (exact_psi(q, s.x, s.y) - s.sigma_sq) / s0);
        if (k > 0)
          decrease.worst =
              std::max(decrease.worst, (s.sigma_sq - rate * (*trace)[k - 1].sigma_sq) / s0);
      }
    }
  }
  std::vector<SelftestLine> out{cg_ia, y_tau, hy_cg, fallbacks, dominance, decrease, psi_decrease};
  for (auto& l : out) l.passed = l.worst <= l.limit;
  return out;
}

}  // namespace hyncg::bench

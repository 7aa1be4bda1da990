// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hyncg/abpdn.hpp"
#include "hyncg/bench.hpp"
#include "hyncg/hinge_loss.hpp"
#include "hyncg/quadratic.hpp"
#include "hyncg/solvers.hpp"

namespace hyncg::bench {
namespace {

namespace fs = std::filesystem;

struct BuiltProblem {
  std::unique_ptr<Objective<double>> objective;
  const QuadraticProblem<double>* quadratic = nullptr;
};

BuiltProblem build(const ProblemSpec& spec) {
  BuiltProblem out;
  switch (spec.kind) {
    case ProblemKind::abpdn:
      out.objective = std::make_unique<AbpdnProblem>(make_abpdn(spec.n, spec.delta, spec.lambda));
      break;
    case ProblemKind::hinge_loss:
      out.objective = std::make_unique<HingeLossProblem>(
          make_hinge_loss(spec.m, spec.n, spec.lambda, spec.noise_sigma, spec.seed));
      break;
    case ProblemKind::quadratic: {
      auto q = std::make_unique<QuadraticProblem<double>>(
          make_random_quadratic<double>(spec.n, spec.kappa, spec.seed));
      out.quadratic = q.get();
      out.objective = std::move(q);
      break;
    }
  }
  return out;
}

SolveResult<double> run_solver(const BuiltProblem& p, const std::string& solver,
                               const SolverOptions<double>& opts) {
  const VectorX<double> x0 = VectorX<double>::Zero(p.objective->dimension());
  const auto& f = *p.objective;
  if (solver == "gd") return gd_run<double>(f, x0, opts);
  if (solver == "ag") return ag_run<double>(f, x0, opts);
  if (solver == "ncg") return ncg_run<double>(f, x0, opts);
  if (solver == "hyncg") return hyncg_run<double>(f, x0, opts);
  if (solver == "hyncg_gr") return hyncg_variant_run<double>(f, x0, opts, HybridCriterion::grad_norm);
  if (solver == "hyncg_f") return hyncg_variant_run<double>(f, x0, opts, HybridCriterion::f_value);
  if (solver == "cg" && p.quadratic) return cg_run<double>(*p.quadratic, x0, opts);
  throw std::invalid_argument("solver '" + solver + "' cannot run here");
}

std::string full(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_trace(const fs::path& path, const std::vector<IterationRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "outer,step,f,grad_norm,sigma_sq,inner,cumulative\n";
  for (const auto& r : trace)
    out << r.outer << ',' << to_string(r.kind) << ',' << full(r.f) << ',' << full(r.grad_norm)
        << ',' << full(r.sigma_sq) << ',' << r.inner << ',' << r.cumulative << '\n';
}

std::string grouped(long v) {
  std::string digits = std::to_string(v < 0 ? -v : v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return v < 0 ? "-" + out : out;
}

}  // namespace

SuiteOutput run_suite(const BenchmarkConfig& cfg, std::ostream* log) {
  validate(cfg);
  const auto specs = expand(cfg);
  SuiteOutput result;
  result.directory = output_directory(cfg);
  const fs::path dir(result.directory);
  std::error_code ec;
  fs::create_directories(dir / "traces", ec);
  if (ec) throw std::runtime_error("cannot create '" + (dir / "traces").string() + "': " + ec.message());
  {
    std::ofstream resolved(dir / "resolved_config.txt");
    if (!resolved) throw std::runtime_error("cannot write into '" + dir.string() + "'");
    resolved << resolved_text(cfg);
  }
  std::ofstream moduli(dir / "problems.csv");
  moduli << "problem,dimension,ell,L\n";

  std::mutex log_mutex;
  for (const auto& spec : specs) {
    const BuiltProblem problem = build(spec);
    const double ell = problem.objective->strong_convexity();
    const double big_l = problem.objective->smoothness();
    moduli << spec.label << ',' << problem.objective->dimension() << ',' << full(ell) << ','
           << full(big_l) << '\n';
    if (log)
      *log << spec.label << ": dimension " << problem.objective->dimension() << ", ell " << ell
           << ", L " << big_l << std::endl;

    SolverOptions<double> opts;
    opts.tol = cfg.tol;
    opts.max_outer = cfg.max_outer;
    opts.line.tol = cfg.ls_tol;
    opts.record_trace = cfg.write_traces;

    const std::size_t cells = cfg.solvers.size();
    std::vector<ResultRow> rows(cells);
    std::vector<std::exception_ptr> errors(cells);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next++) < cells;) {
        const std::string& solver = cfg.solvers[i];
        try {
          const auto t0 = std::chrono::steady_clock::now();
          const auto r = run_solver(problem, solver, opts);
          const double ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                  .count();
          rows[i] = ResultRow{spec.label, solver, r.iterations, !r.converged, r.grad_norm, r.f, ms};
          if (cfg.write_traces)
            write_trace(dir / "traces" / (spec.label + "__" + solver + ".csv"), r.trace);
          if (log) {
            std::lock_guard lock(log_mutex);
            *log << "  " << display_name(solver) << ": "
                 << (r.converged ? grouped(r.iterations) : "DNC (" + grouped(r.iterations) + ")")
                 << "  outer " << r.outer_iterations << "  |g| " << r.grad_norm << "  "
                 << std::fixed << std::setprecision(0) << ms << " ms" << std::defaultfloat
                 << std::setprecision(6);
            if (r.potential_violations) *log << "  potential violations " << r.potential_violations;
            if (!r.diagnostic.empty()) *log << "  [" << r.diagnostic << "]";
            *log << std::endl;
          }
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    const int threads = std::min<int>(cfg.jobs, static_cast<int>(cells));
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  }

  std::ofstream csv(dir / "results.csv");
  if (!csv) throw std::runtime_error("cannot write '" + (dir / "results.csv").string() + "'");
  write_csv(csv, result.rows);
  return result;
}

std::string csv_header() {
  return "problem,solver,iterations,dnc,final_grad_norm,final_f,wall_ms";
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows)
    out << r.problem << ',' << r.solver << ',' << r.iterations << ',' << (r.dnc ? 1 : 0) << ','
        << full(r.final_grad_norm) << ',' << full(r.final_f) << ',' << std::fixed
        << std::setprecision(1) << r.wall_ms << std::defaultfloat << '\n';
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header())
    throw std::invalid_argument("results file does not start with '" + csv_header() + "'");
  std::vector<ResultRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string item; std::getline(ss, item, ',');) f.push_back(item);
    if (f.size() != 7) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 7 fields");
    try {
      rows.push_back(ResultRow{f[0], f[1], std::stol(f[2]), f[3] == "1", std::stod(f[4]),
                               std::stod(f[5]), std::stod(f[6])});
    } catch (const std::logic_error&) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed number");
    }
  }
  return rows;
}

std::vector<ResultRow> read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  return read_csv(in);
}

std::string emit_table(const std::vector<ResultRow>& rows, TableFormat format) {
  if (rows.empty()) throw std::invalid_argument("no result rows");
  std::ostringstream os;
  if (format == TableFormat::csv) {
    write_csv(os, rows);
    return os.str();
  }
  std::vector<std::string> problems, solvers;
  std::set<std::string> seen_p, seen_s;
  for (const auto& r : rows) {
    if (seen_p.insert(r.problem).second) problems.push_back(r.problem);
    if (seen_s.insert(r.solver).second) solvers.push_back(r.solver);
  }
  os << "| problem |";
  for (const auto& s : solvers) os << ' ' << display_name(s) << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < solvers.size(); ++i) os << "---:|";
  os << '\n';
  for (const auto& p : problems) {
    os << "| " << p << " |";
    for (const auto& s : solvers) {
      std::string cell;
      for (const auto& r : rows)
        if (r.problem == p && r.solver == s) cell = r.dnc ? "DNC" : grouped(r.iterations);
      os << ' ' << cell << " |";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace hyncg::bench

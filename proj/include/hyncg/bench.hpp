// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyncg/types.hpp"

namespace hyncg::bench {

enum class ProblemKind { abpdn, hinge_loss, quadratic };

const char* to_string(ProblemKind k);

/// One benchmark grid. List-valued keys (n, m, delta, lambda, kappa) expand
/// to their cartesian product; quadratic grids repeat each point for
/// `count` consecutive seeds.
struct BenchmarkConfig {
  ProblemKind problem = ProblemKind::hinge_loss;
  std::vector<Index> n;
  std::vector<Index> m;
  std::vector<double> delta;
  std::vector<double> lambda;
  std::vector<double> kappa;
  double noise_sigma = 0.4;
  std::uint64_t seed = 1;
  int count = 1;
  std::vector<std::string> solvers;
  double tol = 1e-8;
  long max_outer = 100000;
  double ls_tol = 1e-8;
  bool write_traces = true;
  int jobs = 1;
  std::string output_dir = "bench_out";
};

/// Flat `key = value` text; `#` starts a comment, lists are comma separated.
/// Throws std::invalid_argument on unknown keys or malformed values.
std::map<std::string, std::string> parse_entries(std::istream& in);
BenchmarkConfig config_from_entries(const std::map<std::string, std::string>& entries);
BenchmarkConfig load_config(const std::string& path,
                            const std::vector<std::string>& overrides = {});
void validate(const BenchmarkConfig& cfg);
std::string resolved_text(const BenchmarkConfig& cfg);

/// HYNCG_OUTPUT_DIR wins over the config's output_dir.
std::string output_directory(const BenchmarkConfig& cfg);

struct ProblemSpec {
  ProblemKind kind = ProblemKind::hinge_loss;
  Index n = 0;
  Index m = 0;
  double delta = 0;
  double lambda = 0;
  double kappa = 0;
  double noise_sigma = 0.4;
  std::uint64_t seed = 1;
  std::string label;
};

std::vector<ProblemSpec> expand(const BenchmarkConfig& cfg);

const std::vector<std::string>& known_solvers();
std::string display_name(const std::string& solver);

struct ResultRow {
  std::string problem;
  std::string solver;
  long iterations = 0;
  bool dnc = false;
  double final_grad_norm = 0;
  double final_f = 0;
  double wall_ms = 0;
};

struct SuiteOutput {
  std::vector<ResultRow> rows;
  std::string directory;
};

/// Runs every (problem, solver) cell. Rows come back ordered by problem,
/// then by the config's solver order, whatever `jobs` is. Writes
/// results.csv, resolved_config.txt and traces/<problem>__<solver>.csv.
SuiteOutput run_suite(const BenchmarkConfig& cfg, std::ostream* log = nullptr);

std::string csv_header();
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(std::istream& in);
std::vector<ResultRow> read_csv_file(const std::string& path);

enum class TableFormat { csv, markdown };

/// Markdown puts problems in rows and solvers in columns, like the paper.
std::string emit_table(const std::vector<ResultRow>& rows, TableFormat format);

/// Reference entries. `band` gates count in [ref/f, ref*f] (or both DNC),
/// `info` reports without gating, `dnc` and `converges` gate the flag,
/// `order` gates a chain like "hyncg<ncg<gd" (`<=` allowed) within one
/// problem, `increasing` gates one solver's counts along a `;` separated
/// problem list, and `above` gates count > value. DNC ranks above any count.
struct ReferenceEntry {
  std::string check;
  std::string problem;
  std::string solver;
  std::string value;
};

std::vector<ReferenceEntry> read_reference(std::istream& in);
std::vector<ReferenceEntry> read_reference_file(const std::string& path);

struct CheckLine {
  std::string check;
  std::string subject;
  std::string detail;
  bool gated = true;
  bool passed = true;
};

struct CheckReport {
  std::vector<CheckLine> lines;
  int evaluated = 0;
  int skipped = 0;
  bool passed() const;
};

/// Entries naming problems or solvers absent from `rows` are skipped. If no
/// entry matches at all the labels are mismatched and this throws.
CheckReport compare_against_reference(const std::vector<ResultRow>& rows,
                                      const std::vector<ReferenceEntry>& reference,
                                      double tolerance_factor = 2.0);

void print_report(std::ostream& out, const CheckReport& report);

struct SelftestOptions {
  Index n = 30;
  int count = 20;
  double kappa = 1e4;
  std::uint64_t seed = 1;
  int iterations = 20;
};

struct SelftestLine {
  std::string name;
  double worst = 0;
  double limit = 0;
  bool passed = true;
};

/// Quadratic invariant suite: CG against the idealized algorithm, HyNCG
/// against CG, potential dominance and decrease for GD, CG and HyNCG.
std::vector<SelftestLine> run_selftest(const SelftestOptions& opts);

}  // namespace hyncg::bench

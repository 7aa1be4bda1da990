// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "hyncg/bench.hpp"

namespace hyncg::bench {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw std::invalid_argument(key + ": not a number: '" + text + "'");
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v)) throw std::invalid_argument(key + ": not an integer: '" + text + "'");
  return static_cast<long long>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument(key + ": not a boolean: '" + text + "'");
}

std::vector<double> doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(to_double(key, item));
  return out;
}

std::vector<Index> indices(const std::string& key, const std::string& text) {
  std::vector<Index> out;
  for (const auto& item : split(text, ',')) out.push_back(static_cast<Index>(to_integer(key, item)));
  return out;
}

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

template <typename T, typename F>
std::string join(const std::vector<T>& v, F fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

std::string short_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::abpdn:
      return "abpdn";
    case ProblemKind::hinge_loss:
      return "hinge_loss";
    case ProblemKind::quadratic:
      return "quadratic";
  }
  return "?";
}

std::map<std::string, std::string> parse_entries(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return entries;
}

BenchmarkConfig config_from_entries(const std::map<std::string, std::string>& entries) {
  BenchmarkConfig cfg;
  bool lambda_given = false;
  for (const auto& [key, value] : entries) {
    if (key == "problem") {
      if (value == "abpdn")
        cfg.problem = ProblemKind::abpdn;
      else if (value == "hinge_loss")
        cfg.problem = ProblemKind::hinge_loss;
      else if (value == "quadratic")
        cfg.problem = ProblemKind::quadratic;
      else
        throw std::invalid_argument("unknown problem '" + value + "'");
    } else if (key == "n") {
      cfg.n = indices(key, value);
    } else if (key == "m") {
      cfg.m = indices(key, value);
    } else if (key == "delta") {
      cfg.delta = doubles(key, value);
    } else if (key == "lambda") {
      cfg.lambda = doubles(key, value);
      lambda_given = true;
    } else if (key == "kappa") {
      cfg.kappa = doubles(key, value);
    } else if (key == "noise_sigma") {
      cfg.noise_sigma = to_double(key, value);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(to_integer(key, value));
    } else if (key == "count") {
      cfg.count = static_cast<int>(to_integer(key, value));
    } else if (key == "solvers") {
      cfg.solvers = split(value, ',');
    } else if (key == "tol") {
      cfg.tol = to_double(key, value);
    } else if (key == "max_outer") {
      cfg.max_outer = static_cast<long>(to_integer(key, value));
    } else if (key == "ls_tol") {
      cfg.ls_tol = to_double(key, value);
    } else if (key == "write_traces") {
      cfg.write_traces = to_bool(key, value);
    } else if (key == "jobs") {
      cfg.jobs = static_cast<int>(to_integer(key, value));
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  if (cfg.problem == ProblemKind::abpdn && !lambda_given) cfg.lambda = {1e-3};
  return cfg;
}

BenchmarkConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config '" + path + "'");
  auto entries = parse_entries(in);
  for (const auto& o : overrides) {
    std::istringstream line(o);
    for (const auto& [k, v] : parse_entries(line)) entries[k] = v;
  }
  return config_from_entries(entries);
}

void validate(const BenchmarkConfig& cfg) {
  if (cfg.solvers.empty()) throw std::invalid_argument("no solvers given");
  for (const auto& s : cfg.solvers) {
    const auto& known = known_solvers();
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw std::invalid_argument("unknown solver '" + s + "'");
    if (s == "cg" && cfg.problem != ProblemKind::quadratic)
      throw std::invalid_argument("solver 'cg' needs a quadratic problem");
  }
  if (!(cfg.tol > 0)) throw std::invalid_argument("tol must be positive");
  if (!(cfg.ls_tol > 0)) throw std::invalid_argument("ls_tol must be positive");
  if (cfg.max_outer < 1) throw std::invalid_argument("max_outer must be at least 1");
  if (cfg.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (cfg.count < 1) throw std::invalid_argument("count must be at least 1");
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("missing ") + what);
  };
  need(!cfg.n.empty(), "n");
  switch (cfg.problem) {
    case ProblemKind::abpdn:
      need(!cfg.delta.empty(), "delta");
      need(!cfg.lambda.empty(), "lambda");
      break;
    case ProblemKind::hinge_loss:
      need(!cfg.m.empty(), "m");
      need(!cfg.lambda.empty(), "lambda");
      break;
    case ProblemKind::quadratic:
      need(!cfg.kappa.empty(), "kappa");
      break;
  }
}

std::string resolved_text(const BenchmarkConfig& cfg) {
  auto idx = [](Index v) { return std::to_string(v); };
  std::ostringstream os;
  os << "problem = " << to_string(cfg.problem) << "\n";
  if (!cfg.n.empty()) os << "n = " << join(cfg.n, idx) << "\n";
  if (!cfg.m.empty()) os << "m = " << join(cfg.m, idx) << "\n";
  if (!cfg.delta.empty()) os << "delta = " << join(cfg.delta, number) << "\n";
  if (!cfg.lambda.empty()) os << "lambda = " << join(cfg.lambda, number) << "\n";
  if (!cfg.kappa.empty()) os << "kappa = " << join(cfg.kappa, number) << "\n";
  os << "noise_sigma = " << number(cfg.noise_sigma) << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "count = " << cfg.count << "\n";
  os << "solvers = " << join(cfg.solvers, [](const std::string& s) { return s; }) << "\n";
  os << "tol = " << number(cfg.tol) << "\n";
  os << "max_outer = " << cfg.max_outer << "\n";
  os << "ls_tol = " << number(cfg.ls_tol) << "\n";
  os << "write_traces = " << (cfg.write_traces ? "true" : "false") << "\n";
  os << "jobs = " << cfg.jobs << "\n";
  os << "output_dir = " << output_directory(cfg) << "\n";
  return os.str();
}

std::string output_directory(const BenchmarkConfig& cfg) {
  if (const char* env = std::getenv("HYNCG_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

std::vector<ProblemSpec> expand(const BenchmarkConfig& cfg) {
  std::vector<ProblemSpec> out;
  switch (cfg.problem) {
    case ProblemKind::abpdn:
      for (Index n : cfg.n)
        for (double d : cfg.delta)
          for (double l : cfg.lambda) {
            ProblemSpec p{ProblemKind::abpdn, n, 0, d, l, 0, 0, cfg.seed, {}};
            p.label = "abpdn_n" + std::to_string(n) + "_delta" + short_number(d);
            if (l != 1e-3) p.label += "_lambda" + short_number(l);
            out.push_back(p);
          }
      break;
    case ProblemKind::hinge_loss:
      for (Index m : cfg.m)
        for (Index n : cfg.n)
          for (double l : cfg.lambda) {
            ProblemSpec p{ProblemKind::hinge_loss, n, m, 0, l, 0, cfg.noise_sigma, cfg.seed, {}};
            p.label = "hl_m" + std::to_string(m) + "_n" + std::to_string(n) + "_lambda" +
                      short_number(l);
            out.push_back(p);
          }
      break;
    case ProblemKind::quadratic:
      for (Index n : cfg.n)
        for (double k : cfg.kappa)
          for (int c = 0; c < cfg.count; ++c) {
            const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(c);
            ProblemSpec p{ProblemKind::quadratic, n, 0, 0, 0, k, 0, seed, {}};
            p.label = "quadratic_n" + std::to_string(n) + "_kappa" + short_number(k) + "_seed" +
                      std::to_string(seed);
            out.push_back(p);
          }
      break;
  }
  return out;
}

const std::vector<std::string>& known_solvers() {
  static const std::vector<std::string> names{"gd", "ag", "cg", "ncg", "hyncg", "hyncg_gr",
                                              "hyncg_f"};
  return names;
}

std::string display_name(const std::string& solver) {
  if (solver == "gd") return "GD";
  if (solver == "ag") return "AG";
  if (solver == "cg") return "CG";
  if (solver == "ncg") return "NCG";
  if (solver == "hyncg") return "HyNCG";
  if (solver == "hyncg_gr") return "HyNCG/gr";
  if (solver == "hyncg_f") return "HyNCG/f";
  return solver;
}

}  // namespace hyncg::bench

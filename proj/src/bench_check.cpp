// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hyncg/bench.hpp"

namespace hyncg::bench {
namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

const ResultRow* find(const std::vector<ResultRow>& rows, const std::string& problem,
                      const std::string& solver) {
  for (const auto& r : rows)
    if (r.problem == problem && r.solver == solver) return &r;
  return nullptr;
}

double rank(const ResultRow& r) {
  return r.dnc ? std::numeric_limits<double>::infinity() : static_cast<double>(r.iterations);
}

std::string shown(const ResultRow& r) {
  return r.dnc ? "DNC" : std::to_string(r.iterations);
}

struct Link {
  std::string solver;
  bool strict = true;  // relation to the next element
};

std::vector<Link> parse_chain(const std::string& text) {
  std::vector<Link> chain;
  std::string name;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '<') {
      const bool le = i + 1 < text.size() && text[i + 1] == '=';
      chain.push_back({name, !le});
      name.clear();
      if (le) ++i;
    } else {
      name += c;
    }
  }
  chain.push_back({name, true});
  if (chain.size() < 2) throw std::invalid_argument("order chain needs two solvers: '" + text + "'");
  return chain;
}

double number_value(const ReferenceEntry& e) {
  try {
    return std::stod(e.value);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("reference value '" + e.value + "' is not a number");
  }
}

}  // namespace

bool CheckReport::passed() const {
  for (const auto& l : lines)
    if (l.gated && !l.passed) return false;
  return true;
}

std::vector<ReferenceEntry> read_reference(std::istream& in) {
  std::vector<ReferenceEntry> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      if (line != "check,problem,solver,value")
        throw std::invalid_argument("reference file must start with 'check,problem,solver,value'");
      header = false;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string item; std::getline(ss, item, ',');) f.push_back(item);
    while (f.size() < 4) f.emplace_back();
    out.push_back({f[0], f[1], f[2], f[3]});
  }
  return out;
}

std::vector<ReferenceEntry> read_reference_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  return read_reference(in);
}

CheckReport compare_against_reference(const std::vector<ResultRow>& rows,
                                      const std::vector<ReferenceEntry>& reference,
                                      double tolerance_factor) {
  if (!(tolerance_factor >= 1)) throw std::invalid_argument("tolerance factor must be >= 1");
  CheckReport report;
  for (const auto& e : reference) {
    CheckLine line;
    line.check = e.check;
    line.subject = e.problem + " " + e.solver;
    if (e.check == "band" || e.check == "info") {
      const ResultRow* r = find(rows, e.problem, e.solver);
      if (!r) {
        ++report.skipped;
        continue;
      }
      line.gated = e.check == "band";
      if (e.value == "DNC") {
        line.passed = r->dnc;
        line.detail = shown(*r) + " vs DNC";
      } else {
        const double ref = number_value(e);
        const double lo = ref / tolerance_factor, hi = ref * tolerance_factor;
        line.passed = !r->dnc && r->iterations >= lo && r->iterations <= hi;
        std::ostringstream os;
        os << shown(*r) << " vs " << e.value << " (band " << lo << " .. " << hi << ")";
        line.detail = os.str();
      }
      if (!line.gated) line.passed = true;
    } else if (e.check == "dnc" || e.check == "converges") {
      const ResultRow* r = find(rows, e.problem, e.solver);
      if (!r) {
        ++report.skipped;
        continue;
      }
      line.passed = e.check == "dnc" ? r->dnc : !r->dnc;
      line.detail = shown(*r);
    } else if (e.check == "above") {
      const ResultRow* r = find(rows, e.problem, e.solver);
      if (!r) {
        ++report.skipped;
        continue;
      }
      line.passed = rank(*r) > number_value(e);
      line.detail = shown(*r) + " > " + e.value;
    } else if (e.check == "order") {
      const auto chain = parse_chain(e.solver);
      std::vector<const ResultRow*> found;
      for (const auto& link : chain) found.push_back(find(rows, e.problem, link.solver));
      if (std::find(found.begin(), found.end(), nullptr) != found.end()) {
        ++report.skipped;
        continue;
      }
      std::ostringstream os;
      for (std::size_t i = 0; i < chain.size(); ++i) {
        os << chain[i].solver << "=" << shown(*found[i]);
        if (i + 1 < chain.size()) {
          const double a = rank(*found[i]), b = rank(*found[i + 1]);
          const bool ok = chain[i].strict ? a < b : a <= b;
          line.passed = line.passed && ok;
          os << (chain[i].strict ? " < " : " <= ");
        }
      }
      line.detail = os.str();
    } else if (e.check == "increasing") {
      const auto problems = split_on(e.problem, ';');
      std::vector<const ResultRow*> found;
      for (const auto& p : problems) found.push_back(find(rows, p, e.solver));
      if (problems.size() < 2 || std::find(found.begin(), found.end(), nullptr) != found.end()) {
        ++report.skipped;
        continue;
      }
      std::ostringstream os;
      for (std::size_t i = 0; i < found.size(); ++i) {
        os << (i ? " < " : "") << shown(*found[i]);
        if (i + 1 < found.size()) line.passed = line.passed && rank(*found[i]) < rank(*found[i + 1]);
      }
      line.detail = os.str();
    } else {
      throw std::invalid_argument("unknown reference check '" + e.check + "'");
    }
    ++report.evaluated;
    report.lines.push_back(line);
  }
  if (!reference.empty() && report.evaluated == 0)
    throw std::invalid_argument("no reference entry matches the result labels");
  return report;
}

void print_report(std::ostream& out, const CheckReport& report) {
  for (const auto& l : report.lines)
    out << (l.gated ? (l.passed ? "PASS " : "FAIL ") : "INFO ") << l.check << "  " << l.subject
        << "  " << l.detail << '\n';
  out << report.evaluated << " evaluated, " << report.skipped << " skipped: "
      << (report.passed() ? "PASS" : "FAIL") << '\n';
}

}  // namespace hyncg::bench

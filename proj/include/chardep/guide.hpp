#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "subspace.hpp"

namespace chardep {

using Support = std::vector<std::size_t>;  // sorted 1-based row indices

/// Binary n x m guide matrix, stored column by column as supports
/// S_i = { j : B(j,i) = 1 }, together with the divisor parameter t.
class GuideMatrix {
 public:
  GuideMatrix(std::size_t n_rows, std::vector<Support> columns, std::int64_t t)
      : n_rows_(n_rows), columns_(std::move(columns)), t_(t) {
    if (t_ < 2) throw ParamOutOfRange("guide matrix needs t >= 2, got " + std::to_string(t_));
    if (columns_.size() > n_rows_)
      throw ParamOutOfRange("guide matrix needs m <= n, got m=" + std::to_string(columns_.size()) +
                            " n=" + std::to_string(n_rows_));
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      auto& s = columns_[i];
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      if (s.empty()) throw ParamOutOfRange("column " + std::to_string(i + 1) + " has empty support");
      if (s.front() < 1 || s.back() > n_rows_)
        throw ParamOutOfRange("column " + std::to_string(i + 1) + " has a row index outside 1.." +
                              std::to_string(n_rows_));
    }
  }

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return columns_.size(); }
  std::int64_t t() const noexcept { return t_; }
  const std::vector<Support>& columns() const noexcept { return columns_; }
  const Support& column(std::size_t i) const { return columns_.at(i); }

  GuideMatrix with_t(std::int64_t t) const { return GuideMatrix(n_rows_, columns_, t); }

  /// The n x m 0/1 matrix over GF(p), columns e_{S_i}.
  MatrixGF numeric(PrimeField field) const {
    MatrixGF m(field, n_rows_, columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c)
      for (auto r : columns_[c]) m.set(r - 1, c, 1);
    return m;
  }

  friend bool operator==(const GuideMatrix&, const GuideMatrix&) = default;

 private:
  std::size_t n_rows_;
  std::vector<Support> columns_;
  std::int64_t t_;
};

inline std::int64_t max_family_t(std::int64_t n) { return (n - 1) / 2 - 1; }

inline void check_family_params(std::int64_t n, std::int64_t t) {
  if (n < 7) throw ParamOutOfRange("n must be >= 7, got " + std::to_string(n));
  const auto hi = max_family_t(n);
  if (t < 2 || t > hi)
    throw ParamOutOfRange("t must satisfy 2 <= t <= floor((n-1)/2)-1 = " + std::to_string(hi) + " for n=" +
                          std::to_string(n) + ", got " + std::to_string(t));
}

/// Square M x M guide with M = n - t - 2: columns 1..t+1 are c - e_i, the
/// remaining columns are e_i.
inline GuideMatrix build_example_guide(std::int64_t n, std::int64_t t) {
  check_family_params(n, t);
  const auto M = static_cast<std::size_t>(n - t - 2);
  std::vector<Support> cols;
  for (std::size_t i = 1; i <= M; ++i) {
    Support s;
    if (i <= static_cast<std::size_t>(t + 1)) {
      for (std::size_t j = 1; j <= M; ++j)
        if (j != i) s.push_back(j);
    } else {
      s.push_back(i);
    }
    cols.push_back(std::move(s));
  }
  return GuideMatrix(M, std::move(cols), t);
}

/// Columns split by support size: proper (1 < |S| < n), singleton (|S| = 1)
/// and full (|S| = n). Column indices are 0-based.
struct ColumnClasses {
  std::vector<std::size_t> b_prime;
  std::vector<std::size_t> b_dprime;
  std::vector<std::size_t> b_full;
  bool b_tprime = false;
};

inline ColumnClasses classify_columns(const GuideMatrix& g) {
  ColumnClasses out;
  for (std::size_t i = 0; i < g.n_cols(); ++i) {
    const auto size = g.column(i).size();
    if (size == 1)
      out.b_dprime.push_back(i);
    else if (size == g.n_rows())
      out.b_full.push_back(i);
    else
      out.b_prime.push_back(i);
  }
  out.b_tprime = !out.b_full.empty();
  return out;
}

inline std::size_t rank_over(const GuideMatrix& g, std::uint32_t p) { return rank(g.numeric(PrimeField(p))); }

inline std::size_t expected_rank(const GuideMatrix& g, std::uint32_t p) {
  return g.t() % static_cast<std::int64_t>(p) == 0 ? g.n_cols() - 1 : g.n_cols();
}

struct RankProfileEntry {
  std::uint32_t p;
  std::size_t expected;
  std::size_t actual;
  bool match;
};

struct RankProfileReport {
  std::vector<RankProfileEntry> entries;
  bool pass = true;
};

/// Admissibility gate: rank m when p does not divide t, m - 1 when it does.
inline RankProfileReport check_rank_profile(const GuideMatrix& g, const std::vector<std::uint32_t>& primes) {
  RankProfileReport report;
  for (auto p : primes) {
    RankProfileEntry e{p, expected_rank(g, p), rank_over(g, p), false};
    e.match = e.expected == e.actual;
    report.pass = report.pass && e.match;
    report.entries.push_back(e);
  }
  return report;
}

struct ProjectionIdentity {
  std::size_t lhs;
  std::size_t rhs;
  bool match;
};

/// dim span{ pi_{S_j}(c) } for c the all-ones vector of GF(p)^n, computed by
/// projecting c coordinate-wise, against (m-1) or m.
inline ProjectionIdentity projection_rank_identity(const GuideMatrix& g, std::uint32_t p) {
  const PrimeField f(p);
  const std::size_t n = g.n_rows();
  const std::vector<std::int64_t> c(n, 1);
  std::vector<std::vector<std::int64_t>> images;
  for (const auto& s : g.columns()) {
    std::vector<std::int64_t> v(n, 0);
    for (auto j : s) v[j - 1] = c[j - 1];
    images.push_back(std::move(v));
  }
  const auto lhs = subspace_span(images, f, n).dim();
  const auto rhs = expected_rank(g, p);
  return {lhs, rhs, lhs == rhs};
}

/// Text format: a header line "n m t", then m lines of n characters in
/// {0,1}, one line per column.
inline GuideMatrix parse_guide(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  auto where = [&] { return "line " + std::to_string(line_no); };

  if (!next_line()) throw ParseError("line 1", "missing header 'n m t'");
  long long n = 0, m = 0, t = 0;
  {
    std::istringstream hdr(line);
    std::string extra;
    if (!(hdr >> n >> m >> t) || (hdr >> extra)) throw ParseError(where(), "header must be three integers 'n m t'");
  }
  if (n < 1 || m < 0) throw ParseError(where(), "header values out of range");
  std::vector<Support> cols;
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw ParseError(where(), "expected " + std::to_string(m) + " column lines");
    std::string bits;
    for (char ch : line)
      if (ch != ' ' && ch != '\t') bits.push_back(ch);
    if (bits.size() != static_cast<std::size_t>(n))
      throw ParseError(where(), "column has " + std::to_string(bits.size()) + " entries, expected " + std::to_string(n));
    Support s;
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j] == '1')
        s.push_back(j + 1);
      else if (bits[j] != '0')
        throw ParseError(where(), std::string("non-binary entry '") + bits[j] + "'");
    }
    cols.push_back(std::move(s));
  }
  if (next_line()) throw ParseError(where(), "trailing content after " + std::to_string(m) + " columns");
  try {
    return GuideMatrix(static_cast<std::size_t>(n), std::move(cols), t);
  } catch (const ParamOutOfRange& err) {
    throw ParseError("line 1", err.what());
  }
}

inline std::string format_guide(const GuideMatrix& g) {
  std::string out = std::to_string(g.n_rows()) + " " + std::to_string(g.n_cols()) + " " + std::to_string(g.t()) + "\n";
  for (const auto& s : g.columns()) {
    std::string row(g.n_rows(), '0');
    for (auto j : s) row[j - 1] = '1';
    out += row + "\n";
  }
  return out;
}

}  // namespace chardep

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "expr.hpp"
#include "guide.hpp"
#include "inequality.hpp"

namespace chardep {

namespace names {

inline std::string A(std::size_t i) { return "A" + std::to_string(i); }
inline std::string B(std::size_t i) { return "B" + std::to_string(i); }
inline const std::string C = "C";

/// A_i for i in [lo, hi]; empty when lo > hi.
inline VarSet A_range(std::size_t lo, std::size_t hi) {
  VarSet out;
  for (std::size_t i = lo; i <= hi; ++i) out.push_back(A(i));
  return out;
}

inline VarSet A_of(const std::vector<std::size_t>& idx) {
  VarSet out;
  for (auto i : idx) out.push_back(A(i));
  return out;
}

/// A_[m] minus A_i
inline VarSet A_all_but(std::size_t m, std::size_t skip) {
  VarSet out;
  for (std::size_t i = 1; i <= m; ++i)
    if (i != skip) out.push_back(A(i));
  return out;
}

}  // namespace names

/// Codimension bound for replacing A_k (k in T) by their complementary
/// refinements.
///
/// interval: for each maximal run [a, b] of consecutive indices in T, the term
///   I(A_1..A_{a-1} ; A_a..A_b).
/// chain: sum over k in T of I(A_1..A_{k-1} ; A_k), i.e. the per-variable
///   codimensions added up. It dominates the interval form term by term.
inline RankExpr nabla_vars(const std::vector<std::size_t>& T, NablaMode mode) {
  std::vector<std::size_t> idx(T);
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  RankExpr out;
  if (mode == NablaMode::chain) {
    for (auto k : idx) out += mi(names::A_range(1, k - 1), {names::A(k)});
    return out;
  }
  for (std::size_t s = 0; s < idx.size();) {
    std::size_t e = s;
    while (e + 1 < idx.size() && idx[e + 1] == idx[e] + 1) ++e;
    out += mi(names::A_range(1, idx[s] - 1), names::A_range(idx[s], idx[e]));
    s = e + 1;
  }
  return out;
}

/// H(C | A_[n]) + sum_i I(A_[n] - A_i ; C)
inline RankExpr nabla_c(std::size_t n) {
  if (n < 1) throw ParamOutOfRange("nabla_c needs n >= 1");
  RankExpr out = cond_h({names::C}, names::A_range(1, n));
  for (std::size_t i = 1; i <= n; ++i) out += mi(names::A_all_but(n, i), {names::C});
  return out;
}

namespace detail {

inline VarSet example_variables(std::size_t M, std::size_t t) {
  VarSet vars = names::A_range(1, M);
  for (std::size_t i = 1; i <= t + 1; ++i) vars.push_back(names::B(i));
  vars.push_back(names::C);
  return vars;
}

// H(B_[t+1], A_[M]-[t+1])
inline VarSet example_joint(std::size_t M, std::size_t t) {
  VarSet vars;
  for (std::size_t i = 1; i <= t + 1; ++i) vars.push_back(names::B(i));
  auto rest = names::A_range(t + 2, M);
  vars.insert(vars.end(), rest.begin(), rest.end());
  return vars;
}

}  // namespace detail

/// Family (a), claimed over characteristics dividing t. Stored as RHS - LHS.
inline TaggedInequality gen_example_a(std::int64_t n, std::int64_t t) {
  check_family_params(n, t);
  using namespace names;
  const auto M = static_cast<std::size_t>(n - t - 2);
  const auto tt = static_cast<std::size_t>(t);
  const std::int64_t Mi = n - t - 2;

  RankExpr lhs = h(detail::example_joint(M, tt));
  lhs += (t + 2) * (Mi - t - 1) * h({C});

  RankExpr rhs = (Mi - 1) * mi(A_range(1, M), {C});
  for (std::size_t i = tt + 2; i <= M; ++i) rhs += (t + 2) * h({A(i)});
  RankExpr bracket = cond_h({C}, A_range(1, M));
  for (std::size_t i = 1; i <= M; ++i) bracket += mi(A_all_but(M, i), {C});
  rhs += ((t + 2) * (Mi - t) - 1) * bracket;
  for (std::size_t i = 1; i <= tt + 1; ++i) {
    rhs += cond_h({B(i)}, A_all_but(M, i));
    rhs += cond_h({B(i)}, {A(i), C});
    rhs += mi(A_range(1, i), A_range(i + 1, tt + 1));
    rhs += mi(A_range(1, i - 1), {A(i)});
  }

  return {rhs - lhs, {ValidityKind::divides, t}, {n, t, Mi, InequalityClass::a, NablaMode::interval},
          detail::example_variables(M, tt)};
}

/// Family (b), claimed over characteristics not dividing t.
inline TaggedInequality gen_example_b(std::int64_t n, std::int64_t t) {
  check_family_params(n, t);
  using namespace names;
  const auto M = static_cast<std::size_t>(n - t - 2);
  const auto tt = static_cast<std::size_t>(t);
  const std::int64_t Mi = n - t - 2;

  RankExpr rhs = make_rational(1, Mi) * h(detail::example_joint(M, tt));
  rhs += cond_h({C}, A_range(1, M));
  for (std::size_t i = 1; i <= M; ++i) rhs += mi(A_all_but(M, i), {C});
  for (std::size_t i = 2; i <= tt + 1; ++i) rhs += mi(A_range(1, i - 1), {A(i)});
  for (std::size_t i = 1; i <= tt + 1; ++i) {
    rhs += cond_h({C}, {A(i), B(i)});
    rhs += cond_h({B(i)}, A_all_but(M, i));
    rhs += mi(A_range(1, i), A_range(i + 1, M));
  }

  return {rhs - h({C}), {ValidityKind::not_divides, t}, {n, t, Mi, InequalityClass::b, NablaMode::interval},
          detail::example_variables(M, tt)};
}

inline std::vector<std::uint32_t> default_witness_primes(std::int64_t t) {
  std::set<std::uint32_t> primes{2, 3, 5, 7, 11, 13};
  std::int64_t rest = t;
  for (std::int64_t d = 2; d * d <= rest; ++d)
    while (rest % d == 0) {
      primes.insert(static_cast<std::uint32_t>(d));
      rest /= d;
    }
  if (rest > 1) primes.insert(static_cast<std::uint32_t>(rest));
  return {primes.begin(), primes.end()};
}

struct TheoremOptions {
  NablaMode nabla = NablaMode::chain;
  std::vector<std::uint32_t> witness_primes;  // empty: primes <= 13 and the prime factors of t
  bool check_profile = true;
};

namespace detail {

struct TheoremParts {
  ColumnClasses classes;
  std::vector<std::size_t> singleton_rows;  // rows j with e_j a column of the guide
  VarSet joint;                             // A_j (singletons), every B_k, and C when a full column exists
  VarSet variables;
};

inline TheoremParts theorem_parts(const GuideMatrix& g, const TheoremOptions& opts) {
  if (opts.check_profile) {
    const auto primes = opts.witness_primes.empty() ? default_witness_primes(g.t()) : opts.witness_primes;
    const auto report = check_rank_profile(g, primes);
    if (!report.pass) {
      std::string bad;
      for (const auto& e : report.entries)
        if (!e.match)
          bad += " p=" + std::to_string(e.p) + " (rank " + std::to_string(e.actual) + ", expected " +
                 std::to_string(e.expected) + ")";
      throw InadmissibleGuide("guide fails the rank profile:" + bad);
    }
  }
  TheoremParts parts;
  parts.classes = classify_columns(g);
  std::set<std::size_t> rows;
  for (auto c : parts.classes.b_dprime) rows.insert(g.column(c).front());
  parts.singleton_rows.assign(rows.begin(), rows.end());
  parts.joint = names::A_of(parts.singleton_rows);
  for (std::size_t k = 1; k <= parts.classes.b_prime.size(); ++k) parts.joint.push_back(names::B(k));
  if (parts.classes.b_tprime) parts.joint.push_back(names::C);
  parts.variables = names::A_range(1, g.n_rows());
  for (std::size_t k = 1; k <= parts.classes.b_prime.size(); ++k) parts.variables.push_back(names::B(k));
  parts.variables.push_back(names::C);
  return parts;
}

inline std::vector<std::size_t> complement(const Support& s, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= n; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

inline std::vector<std::size_t> without(const std::vector<std::size_t>& s, const std::vector<std::size_t>& drop) {
  std::vector<std::size_t> out;
  for (auto i : s)
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) out.push_back(i);
  return out;
}

inline FamilyDescriptor theorem_family(const GuideMatrix& g, const TheoremParts& parts, InequalityClass cls,
                                       NablaMode mode) {
  return {static_cast<std::int64_t>(parts.variables.size()), g.t(), static_cast<std::int64_t>(g.n_rows()), cls, mode};
}

}  // namespace detail

/// General inequality (i) from an admissible guide; claimed over
/// characteristics dividing t. The E symbols of the general statement are
/// emitted as the B variables.
inline TaggedInequality gen_theorem_i(const GuideMatrix& g, const TheoremOptions& opts = {}) {
  using namespace names;
  const auto parts = detail::theorem_parts(g, opts);
  const std::size_t n = g.n_rows();
  const auto m = static_cast<std::int64_t>(g.n_cols());
  const auto bp = static_cast<std::int64_t>(parts.classes.b_prime.size());
  const auto bd = static_cast<std::int64_t>(parts.singleton_rows.size());
  const std::int64_t bt = parts.classes.b_tprime ? 1 : 0;

  RankExpr lhs = h(parts.joint);
  lhs += (bd * bp + bd) * h({C});

  RankExpr rhs = (m - 1) * mi(A_range(1, n), {C});
  for (std::size_t k = 0; k < parts.classes.b_prime.size(); ++k) {
    const auto& s = g.column(parts.classes.b_prime[k]);
    const auto outside = detail::complement(s, n);
    auto outside_c = A_of(outside);
    outside_c.push_back(C);
    rhs += cond_h({B(k + 1)}, A_of(s));
    rhs += cond_h({B(k + 1)}, outside_c);
  }
  for (auto j : parts.singleton_rows) rhs += (bp + 1) * h({A(j)});
  rhs += (bd * bp + bt + bd + bp) * nabla_c(n);
  for (auto col : parts.classes.b_prime) {
    const auto& s = g.column(col);
    rhs += nabla_vars(detail::without(s, parts.singleton_rows), opts.nabla);
    rhs += nabla_vars(detail::without(detail::complement(s, n), parts.singleton_rows), opts.nabla);
  }

  return {rhs - lhs, {ValidityKind::divides, g.t()},
          detail::theorem_family(g, parts, InequalityClass::theorem_i, opts.nabla), parts.variables};
}

/// General inequality (ii); claimed over characteristics not dividing t.
inline TaggedInequality gen_theorem_ii(const GuideMatrix& g, const TheoremOptions& opts = {}) {
  using namespace names;
  const auto parts = detail::theorem_parts(g, opts);
  const std::size_t n = g.n_rows();
  const auto m = static_cast<std::int64_t>(g.n_cols());
  if (m < 1) throw ParamOutOfRange("guide has no columns");

  RankExpr rhs = make_rational(1, m) * h(parts.joint);
  rhs += nabla_c(n);
  for (std::size_t k = 0; k < parts.classes.b_prime.size(); ++k) {
    const auto& s = g.column(parts.classes.b_prime[k]);
    const auto outside = detail::complement(s, n);
    auto outside_b = A_of(outside);
    outside_b.push_back(B(k + 1));
    rhs += cond_h({C}, outside_b);
    rhs += cond_h({B(k + 1)}, A_of(s));
    rhs += nabla_vars(outside, opts.nabla);
    rhs += nabla_vars(s, opts.nabla);
  }

  return {rhs - h({C}), {ValidityKind::not_divides, g.t()},
          detail::theorem_family(g, parts, InequalityClass::theorem_ii, opts.nabla), parts.variables};
}

inline std::size_t family_size(std::int64_t n) { return static_cast<std::size_t>(2 * ((n - 1) / 2) - 4); }

/// Both classes for every admissible t, ordered (a,t=2), (b,t=2), (a,t=3), ...
inline std::vector<TaggedInequality> gen_family(std::int64_t n) {
  if (n < 7) throw ParamOutOfRange("n must be >= 7, got " + std::to_string(n));
  std::vector<TaggedInequality> out;
  for (std::int64_t t = 2; t <= max_family_t(n); ++t) {
    out.push_back(gen_example_a(n, t));
    out.push_back(gen_example_b(n, t));
  }
  return out;
}

/// Number of powers p^e, e >= 1, not exceeding floor((n-1)/2) - 2.
inline std::size_t count_independent(std::int64_t n, std::uint32_t p) {
  if (n < 7) throw ParamOutOfRange("n must be >= 7, got " + std::to_string(n));
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  const std::int64_t m = (n - 1) / 2 - 2;
  std::size_t count = 0;
  for (std::int64_t q = p; q <= m; q *= p) ++count;
  return count;
}

/// I(A1;A2|A3) + I(A1;A2|A4) + I(A3;A4) - I(A1;A2) >= 0, valid over every field.
inline TaggedInequality ingleton() {
  using names::A;
  RankExpr e = cmi({A(1)}, {A(2)}, {A(3)}) + cmi({A(1)}, {A(2)}, {A(4)}) + mi({A(3)}, {A(4)}) - mi({A(1)}, {A(2)});
  return {std::move(e), {ValidityKind::all_fields, 0}, {4, 0, 0, InequalityClass::ingleton, std::nullopt},
          names::A_range(1, 4)};
}

}  // namespace chardep

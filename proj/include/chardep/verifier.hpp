#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "expr.hpp"
#include "generator.hpp"
#include "guide.hpp"
#include "inequality.hpp"
#include "subspace.hpp"

namespace chardep {

struct SamplingPolicy {
  std::size_t ambient_dim = 1;
  std::size_t max_subspace_dim = 1;
  std::uint64_t trials = 0;
  std::uint64_t seed = 42;

  void validate() const {
    if (ambient_dim < 1) throw ParamOutOfRange("ambient dimension must be >= 1");
    if (max_subspace_dim < 1 || max_subspace_dim > ambient_dim)
      throw ParamOutOfRange("max subspace dimension must lie in 1.." + std::to_string(ambient_dim));
  }
};

/// Random stream for one trial, derived only from (seed, trial index) so the
/// schedule of worker threads cannot change what a trial sees.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    engine_.seed(seq);
  }

  /// Uniform integer in [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % bound + 1) % bound;
    std::uint64_t x;
    do x = engine_();
    while (x > limit);
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

/// Draws k uniformly from 0..max_dim, then spans k uniform random vectors.
inline Subspace random_subspace(PrimeField field, std::size_t d, std::size_t max_dim, TrialRng& rng) {
  if (max_dim > d) throw ParamOutOfRange("max_dim exceeds ambient dimension");
  const auto k = static_cast<std::size_t>(rng.below(max_dim + 1));
  MatrixGF m(field, k, d);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < d; ++c) m.set(r, c, static_cast<std::int64_t>(rng.below(field.p())));
  return Subspace::row_space(m);
}

struct Witness {
  Assignment assignment;
  Rational slack;
};

inline nlohmann::json assignment_to_json(const Assignment& a) {
  nlohmann::json spaces = nlohmann::json::object();
  for (const auto& [name, s] : a.vars()) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < s.dim(); ++r) {
      auto row = s.basis().row(r);
      rows.push_back(std::vector<Residue>(row.begin(), row.end()));
    }
    spaces[name] = std::move(rows);
  }
  return {{"field", a.field().p()}, {"ambient_dim", a.ambient_dim()}, {"subspaces", std::move(spaces)}};
}

inline Assignment assignment_from_json(const nlohmann::json& j) {
  const auto& pj = detail::require(j, "field", "");
  const auto& dj = detail::require(j, "ambient_dim", "");
  if (!pj.is_number_unsigned() && !pj.is_number_integer()) throw ParseError("/field", "expected a prime");
  if (!dj.is_number_integer()) throw ParseError("/ambient_dim", "expected an integer");
  std::uint32_t p = pj.get<std::uint32_t>();
  if (!is_prime(p)) throw ParseError("/field", std::to_string(p) + " is not prime");
  const auto d = dj.get<std::size_t>();
  const PrimeField f(p);
  Assignment a(f, d);
  const auto& spaces = detail::require(j, "subspaces", "");
  if (!spaces.is_object()) throw ParseError("/subspaces", "expected an object");
  for (const auto& [name, rows] : spaces.items()) {
    const std::string where = "/subspaces/" + name;
    if (!rows.is_array()) throw ParseError(where, "expected a list of basis rows");
    std::vector<std::vector<std::int64_t>> vecs;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!rows[r].is_array() || rows[r].size() != d)
        throw ParseError(where + "/" + std::to_string(r), "expected a row of length " + std::to_string(d));
      std::vector<std::int64_t> v;
      for (const auto& x : rows[r]) {
        if (!x.is_number_integer()) throw ParseError(where + "/" + std::to_string(r), "expected integers");
        v.push_back(x.get<std::int64_t>());
      }
      vecs.push_back(std::move(v));
    }
    a.set(name, subspace_span(vecs, f, d));
  }
  return a;
}

inline nlohmann::json witness_to_json(const Witness& w) {
  auto j = assignment_to_json(w.assignment);
  j["slack"] = rational_to_json(w.slack);
  return j;
}

inline Witness witness_from_json(const nlohmann::json& j) {
  return {assignment_from_json(j), rational_from_json(detail::require(j, "slack", ""), "/slack")};
}

struct Violation {
  std::uint64_t trial;
  Witness witness;
};

struct TrialReport {
  std::uint64_t trials = 0;
  std::vector<Violation> violations;
  std::optional<Rational> min_slack;
  double elapsed_seconds = 0;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();

  bool clean() const noexcept { return violations.empty(); }
};

/// Serialized report. Timing is left out unless asked for, so two runs of
/// the same configuration serialize byte-identically.
inline nlohmann::json report_to_json(const TrialReport& r, bool include_timing = false) {
  nlohmann::json viol = nlohmann::json::array();
  for (const auto& v : r.violations) viol.push_back({{"trial", v.trial}, {"witness", witness_to_json(v.witness)}});
  nlohmann::json j = {{"trials", r.trials},
                      {"violation_count", r.violations.size()},
                      {"violations", std::move(viol)},
                      {"min_slack", r.min_slack ? rational_to_json(*r.min_slack) : nlohmann::json(nullptr)},
                      {"seed", r.seed},
                      {"config", r.config}};
  if (include_timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

struct VerifyOptions {
  unsigned threads = 0;              // 0: hardware concurrency
  std::vector<std::string> zeroed;  // variables pinned to O
};

namespace detail {

inline unsigned resolve_threads(unsigned requested, std::uint64_t work) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (work < n) n = static_cast<unsigned>(std::max<std::uint64_t>(1, work));
  return n;
}

// Sampling order: the tagged variable list, then anything else in the expression.
inline VarSet sampling_order(const TaggedInequality& q) {
  VarSet order = q.variables;
  for (const auto& v : q.expr.variables())
    if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  return order;
}

struct Partial {
  std::vector<Violation> violations;
  std::optional<std::int64_t> min_scaled;
  std::optional<Rational> min_exact;
};

inline void merge_min(std::optional<Rational>& into, const std::optional<Rational>& v) {
  if (v && (!into || *v < *into)) into = v;
}

}  // namespace detail

/// Evaluates the slack on `policy.trials` independent random assignments
/// and records every negative value.
inline TrialReport sample_verify(const TaggedInequality& q, PrimeField field, const SamplingPolicy& policy,
                                 const VerifyOptions& opts = {}) {
  policy.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto order = detail::sampling_order(q);
  for (const auto& z : opts.zeroed)
    if (std::find(order.begin(), order.end(), z) == order.end()) throw UnknownVariable(z);

  const CompiledExpr compiled(q.expr);
  std::vector<std::size_t> slot_of_var;  // compiled variable index -> sampling slot
  for (const auto& v : compiled.variables())
    slot_of_var.push_back(static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin()));
  std::vector<char> pinned(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    pinned[i] = std::find(opts.zeroed.begin(), opts.zeroed.end(), order[i]) != opts.zeroed.end();

  const unsigned workers = detail::resolve_threads(opts.threads, policy.trials);
  std::vector<detail::Partial> partials(workers);

  auto run_block = [&](unsigned w) {
    const std::uint64_t lo = policy.trials * w / workers;
    const std::uint64_t hi = policy.trials * (w + 1) / workers;
    auto& out = partials[w];
    const Subspace zero = Subspace::zero(field, policy.ambient_dim);
    std::vector<Subspace> spaces(order.size(), zero);
    std::vector<const Subspace*> by_var(slot_of_var.size());
    EntropyTable table(field, policy.ambient_dim, {});
    for (std::uint64_t trial = lo; trial < hi; ++trial) {
      TrialRng rng(policy.seed, trial);
      for (std::size_t i = 0; i < order.size(); ++i)
        spaces[i] = pinned[i] ? zero : random_subspace(field, policy.ambient_dim, policy.max_subspace_dim, rng);
      for (std::size_t v = 0; v < slot_of_var.size(); ++v) by_var[v] = &spaces[slot_of_var[v]];
      table.reset(by_var);
      bool negative;
      if (compiled.fast()) {
        const auto scaled = compiled.evaluate_scaled(table);
        if (!out.min_scaled || scaled < *out.min_scaled) out.min_scaled = scaled;
        negative = scaled < 0;
      } else {
        const auto value = compiled.evaluate(table);
        detail::merge_min(out.min_exact, value);
        negative = value < 0;
      }
      if (negative) {
        Assignment a(field, policy.ambient_dim);
        for (std::size_t i = 0; i < order.size(); ++i) a.set(order[i], spaces[i]);
        out.violations.push_back({trial, {std::move(a), compiled.evaluate(table)}});
      }
    }
  };

  if (workers == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_block, w);
    for (auto& th : pool) th.join();
  }

  TrialReport report;
  report.trials = policy.trials;
  report.seed = policy.seed;
  for (auto& part : partials) {
    for (auto& v : part.violations) report.violations.push_back(std::move(v));
    if (part.min_scaled) detail::merge_min(report.min_slack, compiled.to_value(*part.min_scaled));
    detail::merge_min(report.min_slack, part.min_exact);
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const Violation& a, const Violation& b) { return a.trial < b.trial; });
  report.config = {{"class", to_string(q.family.cls)},
                   {"n", q.family.n},
                   {"t", q.family.t},
                   {"field", field.p()},
                   {"ambient_dim", policy.ambient_dim},
                   {"max_subspace_dim", policy.max_subspace_dim},
                   {"trials", policy.trials},
                   {"seed", policy.seed},
                   {"zeroed", opts.zeroed}};
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// A_i = <e_i> for each row, B_k = <e_{S_k}> for each proper column and
/// C = <all-ones>, in GF(p)^n with n the row count of the guide.
inline Assignment canonical_assignment(const GuideMatrix& g, std::uint32_t p) {
  const PrimeField f(p);
  const std::size_t n = g.n_rows();
  Assignment a(f, n);
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::int64_t> e(n, 0);
    e[i - 1] = 1;
    a.set(names::A(i), subspace_span({e}, f, n));
  }
  const auto classes = classify_columns(g);
  for (std::size_t k = 0; k < classes.b_prime.size(); ++k) {
    std::vector<std::int64_t> e(n, 0);
    for (auto j : g.column(classes.b_prime[k])) e[j - 1] = 1;
    a.set(names::B(k + 1), subspace_span({e}, f, n));
  }
  a.set(names::C, subspace_span({std::vector<std::int64_t>(n, 1)}, f, n));
  return a;
}

struct Refutation {
  Witness witness;
  bool canonical;               // found by the canonical configuration
  std::uint64_t trial = 0;      // random-search trial index otherwise
};

/// Canonical configuration first; then up to `budget` random assignments in
/// GF(p)^n (n = guide rows). Never asserts: returns whatever evaluation finds.
inline std::optional<Refutation> refute(const TaggedInequality& q, const GuideMatrix& g, PrimeField field,
                                        std::uint64_t budget, std::uint64_t seed = 42, unsigned threads = 1) {
  const auto canon = canonical_assignment(g, field.p());
  const auto vars = q.expr.variables();
  const bool covered = std::all_of(vars.begin(), vars.end(), [&](const auto& v) { return canon.contains(v); });
  if (covered) {
    const auto slack = evaluate(q.expr, canon);
    if (slack < 0) return Refutation{{canon, slack}, true, 0};
  }
  if (budget == 0) return std::nullopt;
  const SamplingPolicy policy{g.n_rows(), g.n_rows(), budget, seed};
  auto report = sample_verify(q, field, policy, {threads, {}});
  if (report.violations.empty()) return std::nullopt;
  auto& first = report.violations.front();
  return Refutation{std::move(first.witness), false, first.trial};
}

/// Number of subspaces of GF(p)^d (sum of Gaussian binomials), saturating at
/// uint64 max.
inline std::uint64_t subspace_count(std::uint32_t p, std::size_t d) {
  // g[k] = number of k-dim subspaces, built with the q-Pascal rule.
  std::vector<Integer> row{1};
  for (std::size_t n = 1; n <= d; ++n) {
    std::vector<Integer> next(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      Integer v = 0;
      if (k < n) v += row[k] * boost::multiprecision::pow(Integer(p), static_cast<unsigned>(k));
      if (k > 0) v += row[k - 1];
      next[k] = v;
    }
    row = std::move(next);
  }
  Integer total = 0;
  for (const auto& v : row) total += v;
  return total > Integer(std::numeric_limits<std::uint64_t>::max()) ? std::numeric_limits<std::uint64_t>::max()
                                                                    : static_cast<std::uint64_t>(total);
}

/// Every subspace of GF(p)^d, one per reduced echelon basis.
inline std::vector<Subspace> enumerate_subspaces(PrimeField field, std::size_t d) {
  std::vector<Subspace> out;
  const std::uint32_t p = field.p();
  for (std::size_t k = 0; k <= d; ++k) {
    // pivot column sets of size k, in lexicographic order
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    while (true) {
      std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, col)
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = piv[r] + 1; c < d; ++c)
          if (!std::binary_search(piv.begin(), piv.end(), c)) free.emplace_back(r, c);
      std::vector<std::uint32_t> digits(free.size(), 0);
      while (true) {
        MatrixGF m(field, k, d);
        for (std::size_t r = 0; r < k; ++r) m.set(r, piv[r], 1);
        for (std::size_t i = 0; i < free.size(); ++i) m.set(free[i].first, free[i].second, digits[i]);
        out.push_back(Subspace::row_space(m));
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
        if (i == digits.size()) break;
      }
      // next combination
      std::size_t i = k;
      while (i > 0 && piv[i - 1] == d - k + i - 1) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return out;
}

constexpr std::uint64_t kDefaultExhaustiveCap = 100'000'000;

/// Checks every assignment of subspaces of GF(p)^d to the expression's
/// variables.
inline TrialReport exhaustive_verify(const TaggedInequality& q, PrimeField field, std::size_t d,
                                     std::uint64_t cap = kDefaultExhaustiveCap) {
  const auto start = std::chrono::steady_clock::now();
  const CompiledExpr compiled(q.expr);
  const auto& vars = compiled.variables();
  const std::uint64_t per_var = subspace_count(field.p(), d);
  Integer card = boost::multiprecision::pow(Integer(per_var), static_cast<unsigned>(vars.size()));
  if (card > Integer(cap))
    throw CapExceeded(card > Integer(std::numeric_limits<std::uint64_t>::max())
                          ? std::numeric_limits<std::uint64_t>::max()
                          : static_cast<std::uint64_t>(card),
                      cap, "exhaustive enumeration needs " + card.str() + " assignments, cap is " + std::to_string(cap));
  const auto total = static_cast<std::uint64_t>(card);
  const auto spaces = enumerate_subspaces(field, d);

  TrialReport report;
  report.trials = total;
  std::vector<std::size_t> digit(vars.size(), 0);
  std::vector<const Subspace*> by_var(vars.size(), spaces.empty() ? nullptr : &spaces[0]);
  EntropyTable table(field, d, {});
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    for (std::size_t v = 0; v < vars.size(); ++v) by_var[v] = &spaces[digit[v]];
    table.reset(by_var);
    const auto value = compiled.evaluate(table);
    detail::merge_min(report.min_slack, value);
    if (value < 0) {
      Assignment a(field, d);
      for (std::size_t v = 0; v < vars.size(); ++v) a.set(vars[v], *by_var[v]);
      report.violations.push_back({idx, {std::move(a), value}});
    }
    for (std::size_t v = 0; v < digit.size() && ++digit[v] == spaces.size(); ++v) digit[v] = 0;
  }
  report.config = {{"class", to_string(q.family.cls)}, {"n", q.family.n},       {"t", q.family.t},
                   {"field", field.p()},              {"ambient_dim", d},      {"mode", "exhaustive"},
                   {"subspaces_per_variable", per_var}};
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Pins `var` to O and samples over each listed field.
inline TrialReport zeroed_variable_check(const TaggedInequality& q, const std::string& var,
                                         const std::vector<std::uint32_t>& primes, const SamplingPolicy& policy,
                                         unsigned threads = 0) {
  const auto order = detail::sampling_order(q);
  if (std::find(order.begin(), order.end(), var) == order.end()) throw UnknownVariable(var);
  const auto start = std::chrono::steady_clock::now();
  TrialReport merged;
  merged.seed = policy.seed;
  for (auto p : primes) {
    auto r = sample_verify(q, PrimeField(p), policy, {threads, {var}});
    merged.trials += r.trials;
    for (auto& v : r.violations) merged.violations.push_back(std::move(v));
    detail::merge_min(merged.min_slack, r.min_slack);
  }
  merged.config = {{"class", to_string(q.family.cls)},
                   {"zeroed", var},
                   {"fields", primes},
                   {"ambient_dim", policy.ambient_dim},
                   {"max_subspace_dim", policy.max_subspace_dim},
                   {"trials_per_field", policy.trials},
                   {"seed", policy.seed}};
  merged.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return merged;
}

}  // namespace chardep

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "generator.hpp"
#include "guide.hpp"
#include "verifier.hpp"

namespace chardep::acceptance {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

struct Config {
  bool quick = false;
  unsigned threads = 0;  // parallel degree used for the "N" side of determinism
  std::uint64_t seed = 42;
  // Expected rank of a guide over GF(p); replaceable so the harness itself can be tested.
  std::function<std::size_t(const GuideMatrix&, std::uint32_t)> expected_rank = chardep::expected_rank;
};

inline const std::vector<std::uint32_t> kPrimes{2, 3, 5, 7, 11, 13};

struct Cell {
  std::int64_t n, t;
  std::uint32_t p;
  InequalityClass cls;
};

/// Validity-side cells: class (a) where p | t, class (b) where p does not.
inline std::vector<Cell> validity_cells(bool quick) {
  std::vector<std::pair<std::int64_t, std::int64_t>> params{{7, 2}, {9, 2}, {9, 3}, {11, 2}, {11, 3}, {11, 4}};
  if (quick) params = {{7, 2}, {9, 3}};
  std::vector<Cell> cells;
  for (auto [n, t] : params)
    for (auto p : kPrimes) cells.push_back({n, t, p, t % p == 0 ? InequalityClass::a : InequalityClass::b});
  return cells;
}

inline std::string cell_name(const Cell& c) {
  return "(" + std::to_string(c.n) + "," + std::to_string(c.t) + ") class " + to_string(c.cls) +
         " p=" + std::to_string(c.p);
}

class Runner {
 public:
  explicit Runner(Config cfg, std::ostream* log = nullptr) : cfg_(std::move(cfg)), log_(log) {}

  std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    out.push_back(rank_profiles());
    out.push_back(canonical_slacks());
    out.push_back(validity_suites());
    out.push_back(exhaustive_oracle());
    out.push_back(zeroed_variables());
    out.push_back(family_and_instantiation());
    out.push_back(baseline_sanity());
    out.push_back(determinism());
    return out;
  }

  CriterionResult rank_profiles() {
    return timed(1, "rank-profile reproduction", [&](std::string& detail) {
      bool ok = true;
      std::size_t checked = 0;
      for (std::int64_t n = 7; n <= 15; ++n)
        for (std::int64_t t = 2; t <= max_family_t(n); ++t) {
          const auto g = build_example_guide(n, t);
          const auto M = g.n_cols();
          for (auto p : kPrimes) {
            const auto actual = rank_over(g, p);
            const auto expected = cfg_.expected_rank(g, p);
            const auto closed_form = t % p == 0 ? M - 1 : M;
            ++checked;
            if (actual != expected || expected != closed_form) {
              ok = false;
              detail += "mismatch at (n,t,p)=(" + std::to_string(n) + "," + std::to_string(t) + "," +
                        std::to_string(p) + "): rank " + std::to_string(actual) + ", expected " +
                        std::to_string(expected) + "; ";
            }
          }
        }
      if (ok) detail = std::to_string(checked) + " (n,t,p) cells exact";
      return ok;
    }, 1.0);
  }

  CriterionResult canonical_slacks() {
    return timed(2, "canonical refutation slacks", [&](std::string& detail) {
      const auto g = build_example_guide(7, 2);
      const auto a = gen_example_a(7, 2);
      const auto b = gen_example_b(7, 2);
      struct Expect {
        const TaggedInequality* q;
        std::uint32_t p;
        Rational value;
        const char* label;
      };
      const std::vector<Expect> expect{{&a, 3, make_rational(-1), "(a) GF(3)"},
                                       {&a, 2, make_rational(0), "(a) GF(2)"},
                                       {&b, 2, make_rational(-1, 3), "(b) GF(2)"},
                                       {&b, 3, make_rational(0), "(b) GF(3)"}};
      bool ok = true;
      for (const auto& e : expect) {
        const auto got = evaluate(e.q->expr, canonical_assignment(g, e.p));
        detail += std::string(e.label) + "=" + got.str() + " ";
        ok = ok && got == e.value;
      }
      return ok;
    });
  }

  CriterionResult validity_suites() {
    reports_parallel_.clear();
    return timed(3, "validity-side randomized suites", [&](std::string& detail) {
      bool ok = true;
      double worst = 0;
      for (const auto& c : validity_cells(cfg_.quick)) {
        auto r = run_cell(c, cfg_.threads);
        worst = std::max(worst, r.elapsed_seconds);
        reports_parallel_.push_back(report_to_json(r).dump());
        if (!r.clean() || r.elapsed_seconds >= 60.0) {
          ok = false;
          detail += cell_name(c) + ": " + std::to_string(r.violations.size()) + " violations; ";
        }
        note(cell_name(c) + " violations=" + std::to_string(r.violations.size()) +
             " min_slack=" + (r.min_slack ? r.min_slack->str() : "-"));
      }
      detail += std::to_string(validity_cells(cfg_.quick).size()) + " cells, slowest " + fmt_seconds(worst);
      return ok;
    });
  }

  CriterionResult exhaustive_oracle() {
    return timed(4, "exhaustive small-scale oracle", [&](std::string& detail) {
      bool ok = true;
      auto check = [&](const TaggedInequality& q, std::uint32_t p, std::size_t d, std::uint64_t expect_count) {
        auto r = exhaustive_verify(q, PrimeField(p), d);
        const bool good = r.clean() && r.trials == expect_count;
        detail += "class " + to_string(q.family.cls) + " p=" + std::to_string(p) + " d=" + std::to_string(d) + ": " +
                  std::to_string(r.trials) + " assignments, " + std::to_string(r.violations.size()) + " violations; ";
        ok = ok && good;
      };
      const auto a = gen_example_a(7, 2);
      const auto b = gen_example_b(7, 2);
      if (!cfg_.quick) check(a, 2, 2, 78125);  // 5 subspaces of GF(2)^2, 7 variables
      for (std::uint32_t p : {2u, 3u}) {
        check(a, p, 1, 128);  // GF(p)^1 has exactly 2 subspaces
        check(b, p, 1, 128);
      }
      return ok;
    }, 300.0);
  }

  CriterionResult zeroed_variables() {
    return timed(5, "zero-variable check", [&](std::string& detail) {
      bool ok = true;
      std::size_t runs = 0;
      const std::uint64_t trials = cfg_.quick ? 200 : 1000;
      for (const auto& q : {gen_example_a(7, 2), gen_example_b(7, 2)}) {
        for (const auto& var : q.variables) {
          auto r = zeroed_variable_check(q, var, {2, 3, 5}, {7, 7, trials, cfg_.seed}, cfg_.threads);
          ++runs;
          if (!r.clean()) {
            ok = false;
            detail += "class " + to_string(q.family.cls) + " " + var + ":=O violated; ";
          }
        }
      }
      detail += std::to_string(runs) + " (class, variable) runs over p in {2,3,5}";
      return ok;
    });
  }

  CriterionResult family_and_instantiation() {
    return timed(6, "family count and theorem instantiation", [&](std::string& detail) {
      bool ok = true;
      for (std::int64_t n = 7; n <= 25; ++n) {
        const auto fam = gen_family(n);
        const auto want = static_cast<std::size_t>(2 * ((n - 1) / 2) - 4);
        if (fam.size() != want) {
          ok = false;
          detail += "n=" + std::to_string(n) + " gave " + std::to_string(fam.size()) + "; ";
        }
      }
      std::size_t pairs = 0;
      TheoremOptions opts;
      opts.nabla = NablaMode::interval;
      for (std::int64_t n = 7; n <= 13; ++n)
        for (std::int64_t t = 2; t <= max_family_t(n); ++t) {
          const auto g = build_example_guide(n, t);
          const bool same_i = gen_theorem_i(g, opts).expr == gen_example_a(n, t).expr;
          const bool same_ii = gen_theorem_ii(g, opts).expr == gen_example_b(n, t).expr;
          pairs += 2;
          if (!same_i || !same_ii) {
            ok = false;
            detail += "instantiation differs at (" + std::to_string(n) + "," + std::to_string(t) + "); ";
          }
        }
      detail += "counts for n=7..25, " + std::to_string(pairs) + " term-map comparisons";
      return ok;
    });
  }

  CriterionResult baseline_sanity() {
    return timed(7, "baseline sanity (Ingleton, Shannon)", [&](std::string& detail) {
      bool ok = true;
      const std::uint64_t trials = cfg_.quick ? 1000 : 10000;
      const auto ing = ingleton();
      for (std::uint32_t p : {2u, 3u, 5u}) {
        auto r = sample_verify(ing, PrimeField(p), {6, 6, trials, cfg_.seed}, {cfg_.threads, {}});
        ok = ok && r.clean();
        detail += "Ingleton p=" + std::to_string(p) + ": " + std::to_string(r.violations.size()) + " violations; ";
      }
      for (const auto& q : shannon_basics()) {
        for (std::uint32_t p : {2u, 3u}) {
          auto r = sample_verify(q, PrimeField(p), {6, 6, trials, cfg_.seed}, {cfg_.threads, {}});
          ok = ok && r.clean();
          if (!r.clean()) detail += "Shannon " + to_text(q.expr) + " violated at p=" + std::to_string(p) + "; ";
        }
      }
      return ok;
    });
  }

  CriterionResult determinism() {
    return timed(8, "determinism across parallelism", [&](std::string& detail) {
      if (reports_parallel_.empty()) validity_suites();
      const auto cells = validity_cells(cfg_.quick);
      bool ok = reports_parallel_.size() == cells.size();
      for (std::size_t i = 0; i < cells.size() && ok; ++i) {
        const auto serial = report_to_json(run_cell(cells[i], 1)).dump();
        if (serial != reports_parallel_[i]) {
          ok = false;
          detail += cell_name(cells[i]) + " differs; ";
        }
      }
      detail += std::to_string(cells.size()) + " reports compared, parallel degree " +
                std::to_string(parallel_degree()) + " vs 1";
      return ok;
    });
  }

  /// Monotonicity and submodularity in the form checked by criterion 7.
  static std::vector<TaggedInequality> shannon_basics() {
    TaggedInequality mono{h({"A1", "A2"}) - h({"A1"}), {}, {2, 0, 0, InequalityClass::custom, std::nullopt}, {"A1", "A2"}};
    TaggedInequality submod{h({"A1", "A3"}) + h({"A2", "A3"}) - h({"A1", "A2", "A3"}) - h({"A3"}),
                            {},
                            {3, 0, 0, InequalityClass::custom, std::nullopt},
                            {"A1", "A2", "A3"}};
    TaggedInequality subadd{h({"A1"}) + h({"A2"}) - h({"A1", "A2"}), {}, {2, 0, 0, InequalityClass::custom, std::nullopt},
                            {"A1", "A2"}};
    return {mono, submod, subadd};
  }

 private:
  unsigned parallel_degree() const { return cfg_.threads ? cfg_.threads : std::max(4u, std::thread::hardware_concurrency()); }

  TrialReport run_cell(const Cell& c, unsigned threads) const {
    const auto q = c.cls == InequalityClass::a ? gen_example_a(c.n, c.t) : gen_example_b(c.n, c.t);
    const auto d = static_cast<std::size_t>(c.n);
    const std::uint64_t trials = cfg_.quick ? 1000 : 10000;
    return sample_verify(q, PrimeField(c.p), {d, d, trials, cfg_.seed}, {threads ? threads : parallel_degree(), {}});
  }

  template <typename Fn>
  CriterionResult timed(int id, const std::string& name, Fn&& body, double limit_seconds = 0) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& err) {
      detail += std::string("exception: ") + err.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && secs >= limit_seconds) {
      ok = false;
      detail += " (took " + fmt_seconds(secs) + ", limit " + fmt_seconds(limit_seconds) + ")";
    }
    return {id, name, ok, detail, secs};
  }

  static std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
  }

  void note(const std::string& line) {
    if (log_) *log_ << "    " << line << '\n';
  }

  Config cfg_;
  std::ostream* log_;
  std::vector<std::string> reports_parallel_;
};

inline std::string format_result(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + " (" + secs + "): " +
         r.detail;
}

}  // namespace chardep::acceptance

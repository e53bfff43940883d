#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "acceptance.hpp"
#include "generator.hpp"
#include "guide.hpp"
#include "inequality.hpp"
#include "verifier.hpp"

namespace chardep::cli {

// Stable exit-code contract.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

enum class Format { text, json };

struct CommandConfig {
  std::string subcommand;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> t;
  std::string cls = "both";  // a | b | both | theorem | theorem_i | theorem_ii | ingleton
  std::optional<std::uint32_t> p;
  std::vector<std::uint32_t> primes{2, 3, 5, 7, 11, 13};
  std::optional<std::size_t> d;
  std::optional<std::size_t> max_dim;
  std::uint64_t trials = 10000;
  std::uint64_t budget = 1000;
  std::string seed = "42";  // an integer, or "random"
  unsigned threads = 0;
  NablaMode nabla = NablaMode::chain;
  Format format = Format::text;
  std::optional<std::string> guide_path;
  std::optional<std::string> expr_path;
  std::optional<std::string> out_path;
  std::vector<std::string> zeroed;
  bool exhaustive = false;
  bool force = false;
  bool quick = false;
};

/// Raised for parameter errors; mapped to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::uint64_t resolve_seed(const std::string& s) {
  if (s == "random") {
    std::random_device rd;
    return (std::uint64_t{rd()} << 32) ^ rd();
  }
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("--seed must be an unsigned integer or 'random', got '" + s + "'");
}

inline GuideMatrix load_guide(const CommandConfig& cfg) {
  auto g = parse_guide(read_file(*cfg.guide_path));
  if (cfg.t) g = g.with_t(*cfg.t);
  return g;
}

inline void require_family(const CommandConfig& cfg) {
  if (!cfg.n) throw UsageError("--n is required (or give --guide)");
  if (*cfg.n < 7) throw ParamOutOfRange("n must be >= 7, got " + std::to_string(*cfg.n));
  if (cfg.t) check_family_params(*cfg.n, *cfg.t);
}

inline TheoremOptions theorem_options(const CommandConfig& cfg) {
  TheoremOptions o;
  o.nabla = cfg.nabla;
  o.check_profile = !cfg.force;
  return o;
}

/// The guide an inequality selection refers to: the file, or the example
/// family guide for (n, t).
inline GuideMatrix selected_guide(const CommandConfig& cfg) {
  if (cfg.guide_path) return load_guide(cfg);
  require_family(cfg);
  if (!cfg.t) throw UsageError("--t is required here");
  return build_example_guide(*cfg.n, *cfg.t);
}

/// One inequality chosen by --expr, or by --class with (n, t) or a guide.
inline TaggedInequality select_one(const CommandConfig& cfg) {
  if (cfg.expr_path) {
    const auto j = parse_json_text(read_file(*cfg.expr_path));
    if (j.is_array()) {
      if (j.size() != 1) throw UsageError("--expr file holds " + std::to_string(j.size()) + " inequalities; expected one");
      return tagged_from_json(j[0]);
    }
    return tagged_from_json(j);
  }
  if (cfg.cls == "ingleton") return ingleton();
  if (cfg.cls == "theorem_i") return gen_theorem_i(selected_guide(cfg), theorem_options(cfg));
  if (cfg.cls == "theorem_ii") return gen_theorem_ii(selected_guide(cfg), theorem_options(cfg));
  if (cfg.cls != "a" && cfg.cls != "b")
    throw UsageError("--class must be one of a, b, theorem_i, theorem_ii, ingleton here");
  require_family(cfg);
  if (!cfg.t) throw UsageError("--t is required here");
  return cfg.cls == "a" ? gen_example_a(*cfg.n, *cfg.t) : gen_example_b(*cfg.n, *cfg.t);
}

inline void emit(const CommandConfig& cfg, std::ostream& out, const std::string& body) {
  if (cfg.out_path) {
    std::ofstream f(*cfg.out_path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + *cfg.out_path + "'");
    f << body;
  } else {
    out << body;
  }
}

inline std::string render_assignment(const Assignment& a) {
  std::string s = "GF(" + std::to_string(a.field().p()) + ")^" + std::to_string(a.ambient_dim()) + "\n";
  for (const auto& [name, sub] : a.vars()) {
    s += "  " + name + " = <";
    for (std::size_t r = 0; r < sub.dim(); ++r) {
      if (r) s += ", ";
      s += '(';
      auto row = sub.basis().row(r);
      for (std::size_t c = 0; c < row.size(); ++c) s += (c ? "," : "") + std::to_string(row[c]);
      s += ')';
    }
    s += ">\n";
  }
  return s;
}

inline std::string render_report(const TrialReport& r) {
  std::string s = "trials: " + std::to_string(r.trials) + "\nviolations: " + std::to_string(r.violations.size()) +
                  "\nmin slack: " + (r.min_slack ? r.min_slack->str() : "-") + "\nseed: " + std::to_string(r.seed) +
                  "\nconfig: " + r.config.dump() + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "elapsed: %.3fs\n", r.elapsed_seconds);
  s += buf;
  for (const auto& v : r.violations)
    s += "violation at trial " + std::to_string(v.trial) + ", slack " + v.witness.slack.str() + "\n" +
         render_assignment(v.witness.assignment);
  return s;
}

}  // namespace detail

inline int cmd_gen(const CommandConfig& cfg, std::ostream& out) {
  std::vector<TaggedInequality> ineqs;
  const bool theorem = cfg.cls == "theorem" || cfg.cls == "theorem_i" || cfg.cls == "theorem_ii";
  if (cfg.guide_path || theorem) {
    if (!theorem && cfg.cls != "both") throw UsageError("--guide only supports --class theorem");
    const auto g = detail::selected_guide(cfg);
    const auto opts = detail::theorem_options(cfg);
    if (cfg.cls != "theorem_ii") ineqs.push_back(gen_theorem_i(g, opts));
    if (cfg.cls != "theorem_i") ineqs.push_back(gen_theorem_ii(g, opts));
  } else if (cfg.cls == "ingleton") {
    ineqs.push_back(ingleton());
  } else {
    if (cfg.cls != "a" && cfg.cls != "b" && cfg.cls != "both")
      throw UsageError("--class must be a, b, both, theorem or ingleton");
    detail::require_family(cfg);
    std::vector<std::int64_t> ts;
    if (cfg.t)
      ts.push_back(*cfg.t);
    else
      for (std::int64_t t = 2; t <= max_family_t(*cfg.n); ++t) ts.push_back(t);
    for (auto t : ts) {
      if (cfg.cls != "b") ineqs.push_back(gen_example_a(*cfg.n, t));
      if (cfg.cls != "a") ineqs.push_back(gen_example_b(*cfg.n, t));
    }
  }
  std::string body;
  if (cfg.format == Format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& q : ineqs) arr.push_back(to_json(q));
    body = arr.dump(2) + "\n";
  } else {
    for (std::size_t i = 0; i < ineqs.size(); ++i) body += (i ? "\n" : "") + to_text(ineqs[i]);
  }
  detail::emit(cfg, out, body);
  return kOk;
}

inline int cmd_rank(const CommandConfig& cfg, std::ostream& out) {
  const auto g = detail::selected_guide(cfg);
  const auto report = check_rank_profile(g, cfg.primes);
  std::string body;
  if (cfg.format == Format::json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : report.entries)
      rows.push_back({{"p", e.p}, {"expected", e.expected}, {"actual", e.actual}, {"match", e.match}});
    body = nlohmann::json{{"n_rows", g.n_rows()}, {"m", g.n_cols()}, {"t", g.t()}, {"profile", rows}, {"pass", report.pass}}
               .dump(2) +
           "\n";
  } else {
    body = "guide " + std::to_string(g.n_rows()) + "x" + std::to_string(g.n_cols()) + ", t=" + std::to_string(g.t()) +
           "\n    p  expected  actual  match\n";
    for (const auto& e : report.entries) {
      char line[96];
      std::snprintf(line, sizeof line, "%5u  %8zu  %6zu  %s\n", e.p, e.expected, e.actual, e.match ? "yes" : "NO");
      body += line;
    }
    body += report.pass ? "profile matches\n" : "profile MISMATCH\n";
  }
  detail::emit(cfg, out, body);
  return report.pass ? kOk : kNegative;
}

inline int cmd_verify(const CommandConfig& cfg, std::ostream& out) {
  if (!cfg.p) throw UsageError("--p is required");
  const PrimeField field(*cfg.p);
  const auto q = detail::select_one(cfg);
  const auto var_count = chardep::detail::sampling_order(q).size();
  const std::size_t d = cfg.d.value_or(var_count);
  TrialReport report;
  if (cfg.exhaustive) {
    if (!cfg.zeroed.empty()) throw UsageError("--zero is not supported with --exhaustive");
    report = exhaustive_verify(q, field, d);
  } else {
    if (d < 1) throw UsageError("--d must be >= 1 for sampling");
    const SamplingPolicy policy{d, cfg.max_dim.value_or(d), cfg.trials, detail::resolve_seed(cfg.seed)};
    report = sample_verify(q, field, policy, {cfg.threads, cfg.zeroed});
  }
  detail::emit(cfg, out,
               cfg.format == Format::json ? report_to_json(report, true).dump(2) + "\n" : detail::render_report(report));
  return report.clean() ? kOk : kNegative;
}

/// Exit 0 when a witness was found, 1 when none was.
inline int cmd_refute(const CommandConfig& cfg, std::ostream& out) {
  if (!cfg.p) throw UsageError("--p is required");
  const PrimeField field(*cfg.p);
  const auto q = detail::select_one(cfg);
  const auto g = detail::selected_guide(cfg);
  const auto found = refute(q, g, field, cfg.budget, detail::resolve_seed(cfg.seed), cfg.threads ? cfg.threads : 1);
  std::string body;
  if (cfg.format == Format::json) {
    nlohmann::json j = nullptr;
    if (found) {
      j = witness_to_json(found->witness);
      j["source"] = found->canonical ? "canonical" : "random";
    }
    body = j.dump(2) + "\n";
  } else if (found) {
    body = std::string("witness (") + (found->canonical ? "canonical" : "random search") +
           "), slack " + found->witness.slack.str() + "\n" + detail::render_assignment(found->witness.assignment);
  } else {
    body = "none\n";
  }
  detail::emit(cfg, out, body);
  return found ? kOk : kNegative;
}

inline int cmd_selftest(const CommandConfig& cfg, std::ostream& out) {
  acceptance::Config ac;
  ac.quick = cfg.quick;
  ac.threads = cfg.threads;
  acceptance::Runner runner(ac);
  const auto results = runner.run_all();
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << acceptance::format_result(r) << '\n';
    if (!r.passed) ++failed;
  }
  out << (failed ? std::to_string(failed) + " criteria FAILED" : std::string("all criteria passed")) << '\n';
  return failed ? kNegative : kOk;
}

/// Dispatch with the exit-code contract applied to every error.
inline int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.subcommand == "gen") return cmd_gen(cfg, out);
    if (cfg.subcommand == "rank") return cmd_rank(cfg, out);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
    if (cfg.subcommand == "refute") return cmd_refute(cfg, out);
    if (cfg.subcommand == "selftest") return cmd_selftest(cfg, out);
    err << "unknown subcommand '" << cfg.subcommand << "'\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ParamOutOfRange& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const InadmissibleGuide& e) {
    err << "error: " << e.what() << " (use --force to generate anyway)\n";
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace chardep::cli

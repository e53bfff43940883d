// Command-line front end: gen | rank | verify | refute | selftest.
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "chardep/cli.hpp"

namespace {

using chardep::cli::CommandConfig;

void add_family_opts(CLI::App* sub, CommandConfig& cfg) {
  sub->add_option("--n", cfg.n, "number of variables in the family (>= 7)");
  sub->add_option("--t", cfg.t, "divisor parameter");
  sub->add_option("--guide", cfg.guide_path, "guide matrix file")->check(CLI::ExistingFile);
  sub->add_option("--nabla", cfg.nabla, "nabla expansion for theorem forms")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, chardep::NablaMode>{{"chain", chardep::NablaMode::chain},
                                                    {"interval", chardep::NablaMode::interval}}));
  sub->add_flag("--force", cfg.force, "skip the rank-profile admissibility gate");
}

void add_format_opts(CLI::App* sub, CommandConfig& cfg) {
  sub->add_option("--format", cfg.format, "output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, chardep::cli::Format>{
          {"text", chardep::cli::Format::text}, {"json", chardep::cli::Format::json}}));
  sub->add_option("--out", cfg.out_path, "write output to a file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chardep: characteristic-dependent linear rank inequalities"};
  app.require_subcommand(1);
  CommandConfig cfg;

  auto* gen = app.add_subcommand("gen", "generate inequalities");
  add_family_opts(gen, cfg);
  add_format_opts(gen, cfg);
  gen->add_option("--class", cfg.cls, "a | b | both | theorem | theorem_i | theorem_ii | ingleton")
      ->check(CLI::IsMember({"a", "b", "both", "theorem", "theorem_i", "theorem_ii", "ingleton"}));

  auto* rank = app.add_subcommand("rank", "check a guide matrix rank profile");
  add_family_opts(rank, cfg);
  add_format_opts(rank, cfg);
  rank->add_option("--primes", cfg.primes, "primes to check")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "sample or enumerate subspace assignments");
  add_family_opts(verify, cfg);
  add_format_opts(verify, cfg);
  verify->add_option("--class", cfg.cls, "a | b | theorem_i | theorem_ii | ingleton")
      ->check(CLI::IsMember({"a", "b", "theorem_i", "theorem_ii", "ingleton"}));
  verify->add_option("--expr", cfg.expr_path, "inequality JSON file")->check(CLI::ExistingFile);
  verify->add_option("--p", cfg.p, "field characteristic")->required();
  verify->add_option("--d", cfg.d, "ambient dimension (default: variable count)");
  verify->add_option("--max-dim", cfg.max_dim, "largest sampled subspace dimension (default: d)");
  verify->add_option("--trials", cfg.trials, "number of random assignments")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "integer seed or 'random'");
  verify->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
  verify->add_option("--zero", cfg.zeroed, "pin a variable to the zero subspace (repeatable)");
  verify->add_flag("--exhaustive", cfg.exhaustive, "enumerate every assignment");

  auto* refute = app.add_subcommand("refute", "search for a violating assignment");
  add_family_opts(refute, cfg);
  add_format_opts(refute, cfg);
  refute->add_option("--class", cfg.cls, "a | b | theorem_i | theorem_ii")
      ->check(CLI::IsMember({"a", "b", "theorem_i", "theorem_ii"}));
  refute->add_option("--expr", cfg.expr_path, "inequality JSON file")->check(CLI::ExistingFile);
  refute->add_option("--p", cfg.p, "field characteristic")->required();
  refute->add_option("--budget", cfg.budget, "random-search trials after the canonical attempt");
  refute->add_option("--seed", cfg.seed, "integer seed or 'random'");
  refute->add_option("--threads", cfg.threads, "worker threads");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_flag("--quick", cfg.quick, "reduced grid and trial counts");
  selftest->add_option("--threads", cfg.threads, "parallel degree for the determinism check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : chardep::cli::kUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return chardep::cli::run(cfg, std::cout, std::cerr);
}

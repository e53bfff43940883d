// Acceptance driver: one PASS/FAIL line per criterion. Tolerances are pinned
// in acceptance.hpp: exact equality for ranks, slacks, counts and report
// bytes; 1 s for criterion 1, 60 s per validity cell, 300 s for the
// exhaustive oracle.
#include <cstdio>
#include <cstring>
#include <iostream>

#include "chardep/acceptance.hpp"

int main(int argc, char** argv) {
  chardep::acceptance::Config cfg;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) cfg.quick = true;
    if (std::strcmp(argv[i], "--verbose") == 0) verbose = true;
  }

  chardep::acceptance::Runner runner(cfg, verbose ? &std::cout : nullptr);
  int failed = 0;
  for (const auto& r : runner.run_all()) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << ", " << secs
              << "): " << r.detail << std::endl;
    failed += r.passed ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << '\n';
  return failed ? 1 : 0;
}

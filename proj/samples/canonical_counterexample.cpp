// Evaluates the two (n, t) = (7, 2) example inequalities at the canonical
// subspace configuration over GF(2) and GF(3), then samples each over the
// field where it is claimed to hold.
#include <iostream>

#include "chardep/generator.hpp"
#include "chardep/verifier.hpp"

int main() {
  using namespace chardep;
  const auto guide = build_example_guide(7, 2);
  const auto a = gen_example_a(7, 2);
  const auto b = gen_example_b(7, 2);

  std::cout << "(a): " << to_text(a.expr) << "\n(b): " << to_text(b.expr) << "\n\n";
  for (std::uint32_t p : {2u, 3u}) {
    const auto canon = canonical_assignment(guide, p);
    std::cout << "GF(" << p << ")  rank(guide) = " << rank_over(guide, p) << "  slack(a) = " << evaluate(a.expr, canon)
              << "  slack(b) = " << evaluate(b.expr, canon) << '\n';
  }

  const SamplingPolicy policy{7, 7, 2000, 42};
  const auto ra = sample_verify(a, PrimeField(2), policy);
  const auto rb = sample_verify(b, PrimeField(3), policy);
  std::cout << "\nsampled (a) over GF(2): " << ra.violations.size() << " violations in " << ra.trials << " trials\n"
            << "sampled (b) over GF(3): " << rb.violations.size() << " violations in " << rb.trials << " trials\n";
  return ra.clean() && rb.clean() ? 0 : 1;
}

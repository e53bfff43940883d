#include <gtest/gtest.h>

#include "chardep/generator.hpp"
#include "chardep/inequality.hpp"
#include "chardep/verifier.hpp"

using namespace chardep;

namespace {

RankExpr term(VarSet s, std::int64_t num, std::int64_t den = 1) { return RankExpr{}.add_term(std::move(s), make_rational(num, den)); }

}  // namespace

TEST(Builders, MutualInformationExpansion) {
  const auto e = mi({"A"}, {"B"});
  EXPECT_EQ(e, term({"A"}, 1) + term({"B"}, 1) + term({"A", "B"}, -1));
}

TEST(Builders, ConditionalOnItselfIsZero) { EXPECT_TRUE(cond_h({"A"}, {"A"}).is_zero()); }

TEST(Builders, ConditionalMutualInformationExpansion) {
  const auto e = cmi({"A"}, {"B"}, {"C"});
  EXPECT_EQ(e, term({"A", "C"}, 1) + term({"B", "C"}, 1) + term({"A", "B", "C"}, -1) + term({"C"}, -1));
}

TEST(Builders, EmptyVarsetIsZero) {
  EXPECT_TRUE(h({}).is_zero());
  EXPECT_TRUE(mi({}, {"A"}).is_zero());
}

TEST(Arithmetic, Examples) {
  EXPECT_TRUE(add(h({"A"}), negate(h({"A"}))).is_zero());
  EXPECT_EQ(scale(h({"A", "B"}), make_rational(1, 3)).coefficient({"A", "B"}), make_rational(1, 3));
  EXPECT_EQ(add(mi({"A"}, {"B"}), h({"A", "B"})), term({"A"}, 1) + term({"B"}, 1));
}

TEST(Arithmetic, VarsetsAreCanonicalized) {
  EXPECT_EQ(h({"B", "A", "A"}), h({"A", "B"}));
  EXPECT_EQ(scale(h({"A"}), 0), RankExpr{});
}

TEST(Names, NaturalOrder) {
  EXPECT_TRUE(natural_less("A2", "A10"));
  EXPECT_FALSE(natural_less("A10", "A2"));
  EXPECT_TRUE(natural_less("A9", "B1"));
  EXPECT_EQ(canonical_varset({"A10", "C", "A2", "B1"}), (VarSet{"A2", "A10", "B1", "C"}));
}

TEST(Evaluate, Examples) {
  const PrimeField f(2);
  Assignment a(f, 2);
  a.set("A", subspace_span({{1, 0}}, f, 2));
  EXPECT_EQ(evaluate(RankExpr{}, a), 0);
  EXPECT_EQ(evaluate(h({"A"}), a), 1);
  EXPECT_THROW(evaluate(h({"Z"}), a), UnknownVariable);
}

TEST(Evaluate, CanonicalExampleASlack) {
  const auto a = canonical_assignment(build_example_guide(7, 2), 3);
  EXPECT_EQ(evaluate(gen_example_a(7, 2).expr, a), -1);
}

TEST(Evaluate, LinearityAndCompiledPathAgree) {
  const auto e1 = gen_example_a(9, 2).expr;
  const auto e2 = gen_example_b(9, 2).expr;
  const auto r = make_rational(-5, 7);
  const auto vars = varset_union(e1.variables(), e2.variables());
  for (std::uint32_t p : {2u, 3u}) {
    const PrimeField f(p);
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      TrialRng rng(17, trial);
      Assignment a(f, 6);
      for (const auto& v : vars) a.set(v, random_subspace(f, 6, 6, rng));
      const auto v1 = evaluate(e1, a), v2 = evaluate(e2, a);
      EXPECT_EQ(evaluate(add(e1, e2), a), v1 + v2);
      EXPECT_EQ(evaluate(scale(e1, r), a), r * v1);

      const CompiledExpr compiled(e2);
      std::vector<const Subspace*> ptrs;
      for (const auto& v : compiled.variables()) ptrs.push_back(&a.at(v));
      EntropyTable table(f, 6, ptrs);
      EXPECT_EQ(compiled.evaluate(table), v2);
    }
  }
}

TEST(Text, FixedOrdering) {
  EXPECT_EQ(to_text(mi({"A"}, {"B"})), "+ H(A) + H(B) - H(A,B)");
  EXPECT_EQ(to_text(RankExpr{}), "0");
  EXPECT_EQ(to_text(scale(h({"B1"}), make_rational(-2, 3))), "- 2/3 H(B1)");
}

TEST(Json, RoundTripExampleA) {
  const auto e = gen_example_a(7, 2).expr;
  EXPECT_EQ(from_json(to_json(e).dump()), e);
}

TEST(Json, TaggedRoundTrip) {
  for (const auto& q : gen_family(11)) {
    const auto back = tagged_from_json(parse_json_text(to_json(q).dump()));
    EXPECT_EQ(back.expr, q.expr);
    EXPECT_EQ(back.variables, q.variables);
    EXPECT_EQ(back.validity.kind, q.validity.kind);
    EXPECT_EQ(back.validity.t, q.validity.t);
    EXPECT_EQ(back.family.cls, q.family.cls);
    EXPECT_EQ(back.family.M, q.family.M);
    EXPECT_EQ(back.family.nabla, q.family.nabla);
  }
}

TEST(Json, DuplicateVarsetsAreSummed) {
  const auto e = from_json(R"({"terms":[{"coeff":{"num":1,"den":2},"vars":["B","A"]},
                                         {"coeff":{"num":1,"den":3},"vars":["A","B"]},
                                         {"coeff":{"num":1,"den":1},"vars":["C"]},
                                         {"coeff":{"num":-1,"den":1},"vars":["C"]}]})");
  EXPECT_EQ(e, term({"A", "B"}, 5, 6));
}

TEST(Json, BigCoefficientsSurvive) {
  const Rational big(Integer("123456789012345678901234567890"), Integer(7));
  const auto e = scale(h({"A"}), big);
  EXPECT_EQ(from_json(to_json(e).dump()), e);
}

TEST(Json, ParseErrorsCarryLocation) {
  try {
    from_json(R"({"terms":[{"coeff":{"num":1,"den":0},"vars":["A"]}]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), "/terms/0/coeff/den");
  }
  try {
    from_json(R"({"terms":[{"coeff":{"num":1,"den":1},"vars":[3]}]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), "/terms/0/vars/0");
  }
  try {
    from_json("{\"terms\": [");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().rfind("byte ", 0), 0u);
  }
  EXPECT_THROW(from_json(R"({"nope":1})"), ParseError);
}

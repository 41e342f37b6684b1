// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "../support/zgroup_support.hpp"
#include "saturator/errors.hpp"
#include "saturator/zgroup.hpp"

namespace saturator {
namespace {

using testing::two_generator_model;

Formula pr(const char* text) { return parse_formula(text, Signature::Presburger); }

ZModel one_generator(ResidueProfile profile = ResidueProfile::standard(0)) {
  return ZModel().with_generator({"c1", HahnVector::monomial(2, 1), std::move(profile)});
}

TEST(ResidueProfile, Kinds) {
  EXPECT_EQ(ResidueProfile::standard(-7).residue(5), 3);
  // 0! + 1! + 2! + 3! = 10
  EXPECT_EQ(ResidueProfile::factorial().residue(4), 2);
  EXPECT_EQ(ResidueProfile::factorial(1, 2).residue(4), 1);
  const ResidueProfile pre = ResidueProfile::prefix({{1, 2}, {2, 3}});
  EXPECT_EQ(pre.residue(6), 5);
  EXPECT_EQ(pre.residue(2), 1);
  const ResidueProfile comb =
      ResidueProfile::combination(3, {{2, ResidueProfile::standard(1)}, {-1, ResidueProfile::factorial()}});
  EXPECT_EQ(comb.residue(7), mod(Integer(3 + 2 - (1 + 1 + 2 + 6 + 24 + 120 + 720)), 7));
  const ResidueProfile q = ResidueProfile::quotient(ResidueProfile::standard(12), 4);
  EXPECT_EQ(q.residue(5), 3);
  EXPECT_THROW(ResidueProfile::quotient(ResidueProfile::standard(13), 4), ExactnessError);
  EXPECT_THROW(ResidueProfile::prefix({{1, 2}, {0, 2}}), DomainError);
  EXPECT_THROW(ResidueProfile::prefix({{1, 2}, {0, 4}}), DomainError);
}

TEST(ResidueProfile, CoherentAcrossQueryLogs) {
  std::vector<ResidueProfile> ps{ResidueProfile::factorial(5, 3), ResidueProfile::prefix({{4, 9}, {1, 4}}),
                                 ResidueProfile::quotient(ResidueProfile::factorial(), 2),
                                 ResidueProfile::combination(1, {{-4, ResidueProfile::factorial()}})};
  for (const auto& p : ps) {
    for (int n = 1; n <= 120; ++n) p.residue(n);
    EXPECT_FALSE(p.coherence_violation().has_value()) << p.to_json_text();
    EXPECT_EQ(p.query_log().size(), 120u);
  }
}

TEST(ResidueProfile, JsonRoundTrip) {
  const ResidueProfile p =
      ResidueProfile::combination(2, {{3, ResidueProfile::quotient(ResidueProfile::factorial(), 2)},
                                      {-1, ResidueProfile::prefix({{1, 3}})}});
  const ResidueProfile back = ResidueProfile::from_json_text(p.to_json_text());
  EXPECT_EQ(back.to_json_text(), p.to_json_text());
  for (int n = 1; n < 40; ++n) EXPECT_EQ(back.residue(n), p.residue(n));
  try {
    ResidueProfile::from_json_text(R"({"kind":"prefix","residues":[{"modulus":2,"residue":1},{"modulus":4,"residue":0}]})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.pointer(), "/residues/1");
  }
}

TEST(ZModel, GeneratorGuards) {
  const ZModel m = one_generator();
  EXPECT_THROW(m.with_generator({"c2", HahnVector::monomial(2, 3), {}}), DomainError);
  EXPECT_THROW(m.with_generator({"c2", HahnVector::monomial(0, 1), {}}), DomainError);
  EXPECT_THROW(m.with_generator({"c2", HahnVector::monomial(3, -1), {}}), DomainError);
  EXPECT_THROW(m.with_generator({"c1", HahnVector::monomial(3, 1), {}}), DomainError);
  HahnVector mixed = HahnVector::monomial(2, 1) + HahnVector::monomial(1, 1);
  EXPECT_NO_THROW(m.with_generator({"c2", mixed, {}}));
}

TEST(ZModel, AtomicExamples) {
  const ZModel m = one_generator();
  const ModelElement c1 = m.generator(0);
  EXPECT_EQ(m.eval_atomic(c1, m.constant(1000000)), 1);
  EXPECT_EQ(m.residue(m.add(m.scale(2, c1), m.constant(1)), 2), 1);
  const ModelElement sixth = m.element(0, {1}, 6);
  EXPECT_EQ(m.residue(sixth, 1), 0);
  EXPECT_EQ(m.scale(6, sixth), c1);
  EXPECT_THROW(m.element(1, {1}, 6), ExactnessError);
  EXPECT_EQ(m.element(6, {2}, 6), m.element(3, {1}, 3));

  const ZModel f = ZModel().with_generator({"c", HahnVector::monomial(1, 1), ResidueProfile::factorial()});
  EXPECT_NO_THROW(f.divide(f.generator(0), 2));
  EXPECT_THROW(f.divide(f.generator(0), 3), ExactnessError);
  EXPECT_EQ(f.residue(f.divide(f.generator(0), 2), 5), mod(Integer(1 + 1 + 2 + 6 + 24 + 120 + 720 + 5040 + 40320 + 362880) / 2, 5));
}

TEST(ZModel, OrderIsLexicographic) {
  const ZModel m = two_generator_model();
  const ModelElement c1 = m.generator(0), c2 = m.generator(1);
  EXPECT_EQ(m.eval_atomic(c2, m.scale(1000, c1)), 1);
  EXPECT_EQ(m.eval_atomic(m.sub(c2, m.scale(1000, c1)), m.sub(c2, m.scale(1001, c1))), 1);
  EXPECT_EQ(m.eval_atomic(m.add(c1, m.constant(-5)), m.constant(1000000)), 1);
  EXPECT_EQ(m.eval_atomic(m.element(3, {1}, 3), m.element(0, {1}, 3)), 1);
}

TEST(ZModel, DecideExamples) {
  const ZModel m = one_generator();
  const ElementAssignment c{{"c", m.generator(0)}};
  EXPECT_TRUE(m.decide(pr("P2(c)"), c));
  EXPECT_TRUE(m.decide(pr("0 < 1"), {}));
  EXPECT_FALSE(m.decide(pr("E v. (c < v & v < c + 2 & P2(v))"), c));
  const ZModel odd = one_generator(ResidueProfile::standard(1));
  EXPECT_TRUE(odd.decide(pr("E v. (c < v & v < c + 2 & P2(v))"), {{"c", odd.generator(0)}}));
  EXPECT_TRUE(m.decide(pr("E v. (v + v + v = c)"), c));
  EXPECT_FALSE(m.decide(pr("E v. (v + v + v = c + 1)"), c));
  EXPECT_THROW(m.decide(pr("0 < d"), c), DomainError);
  DecideOptions shallow;
  shallow.max_quantifier_depth = 1;
  EXPECT_THROW(m.decide(pr("A x. E y. x < y"), {}, shallow), Unsupported);
}

TEST(ZModel, PresburgerAxiomsHold) {
  std::vector<ZModel> models{two_generator_model()};
  models.push_back(extend_case1(models[0], testing::omitted_cut(models[0])).model);
  models.push_back(
      extend_case2(models[0], testing::realized_cut(models[0]), models[0].generator(1)).model);
  std::vector<Formula> axioms{pr("0 < 1"), pr("A x. !(0 < x & x < 1)"), pr("A x. A y. (x < y | x = y | y < x)"),
                              pr("A x. A y. (x < y -> x + 1 < y | x + 1 = y)")};
  for (int n = 2; n <= 12; ++n) {
    std::string body;
    for (int i = 0; i < n; ++i) body += (i ? " | P" : "P") + std::to_string(n) + "(x + " + std::to_string(n - i) + ")";
    axioms.push_back(pr(("A x. (" + body + ")").c_str()));
  }
  for (const auto& m : models) {
    for (const auto& ax : axioms) EXPECT_TRUE(m.decide(ax, {})) << to_string(ax);
    // Instances at every generator: exactly one residue class.
    for (std::size_t g = 0; g < m.size(); ++g) {
      for (int n = 2; n <= 12; ++n) {
        int hits = 0;
        for (int i = 0; i < n; ++i) {
          const Formula f = Formula::divides(n, LinearTerm::variable("x").plus(-i).to_term());
          hits += m.decide(f, {{"x", m.generator(g)}}) ? 1 : 0;
        }
        EXPECT_EQ(hits, 1);
      }
      for (int n = 1; n <= 60; ++n) m.generators()[g].profile.residue(n);
      EXPECT_FALSE(m.generators()[g].profile.coherence_violation().has_value());
    }
  }
}

TEST(CutSpec, Validation) {
  const ZModel m = two_generator_model();
  CutSpec p = testing::omitted_cut(m);
  const CutWindow w = validate_cut(m, p);
  EXPECT_EQ(w.low, 0);
  EXPECT_EQ(*w.high, 2);
  EXPECT_FALSE(cut_realized(m, p));
  EXPECT_FALSE(cut_realization(m, p).has_value());
  EXPECT_EQ(p.materialize(3).size(), 8u);

  const CutSpec q = testing::realized_cut(m);
  EXPECT_TRUE(cut_realized(m, q));
  const auto b = cut_realization(m, q);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(*b, m.generator(1));

  CutSpec bad = p;
  bad.upper_scale = DclTerm{LinearTerm(5), 1};
  EXPECT_THROW(validate_cut(m, bad), DomainError);
  bad = p;
  bad.params = {m.generator(0), m.generator(1)};
  bad.upper_scale = DclTerm{LinearTerm::variable("c"), 1};
  EXPECT_THROW(validate_cut(m, bad), DomainError);
  bad = p;
  bad.center = DclTerm{LinearTerm::variable("b").plus(1), 2};
  EXPECT_THROW(validate_cut(m, bad), ExactnessError);
}

TEST(ExtendCaseOne, Examples) {
  CutSpec infinite;
  infinite.residues = ResidueProfile::standard(0);
  const CaseOneExtension e = extend_case1(ZModel(), infinite);
  ASSERT_EQ(e.model.size(), 1u);
  EXPECT_EQ(*e.model.generators()[0].position.leading_exponent(), 1);
  EXPECT_TRUE(e.model.decide(pr("1000000000 < a"), {{"a", e.b}}));

  const ZModel m = one_generator();
  CutSpec between;
  between.params = {m.generator(0)};
  between.upper_scale = DclTerm{LinearTerm::variable("b"), 1};
  const CaseOneExtension f = extend_case1(m, between);
  EXPECT_EQ(*f.model.generators()[1].position.leading_exponent(), 1);
  const ModelElement b = f.b, c1 = f.model.generator(0);
  EXPECT_EQ(f.model.eval_atomic(b, f.model.constant(1000000)), 1);
  EXPECT_EQ(f.model.eval_atomic(f.model.scale(1000000, b), c1), -1);

  EXPECT_THROW(extend_case1(two_generator_model(), testing::realized_cut(two_generator_model())),
               PreconditionViolation);
}

TEST(ExtendCaseOne, ResiduesAndCenter) {
  const ZModel m = two_generator_model();
  CutSpec p = testing::omitted_cut(m);
  p.center = DclTerm{LinearTerm::variable("b").plus(7), 1};
  p.direction = -1;
  p.upper_scale.reset();
  p.lower_scale = DclTerm{LinearTerm(1), 1};
  // Window (0, infinity) meets c1, so move it below c1's class.
  p.upper_scale = DclTerm{LinearTerm::variable("b"), 1};
  const CaseOneExtension e = extend_case1(m, p);
  const ModelElement c1 = e.model.generator(0);
  EXPECT_EQ(e.model.eval_atomic(e.b, c1), -1);
  EXPECT_EQ(e.model.eval_atomic(e.b, e.model.sub(c1, e.model.constant(1000000))), -1);
  for (int n = 1; n <= 30; ++n) EXPECT_EQ(e.model.residue(e.b, n), p.residues.residue(n)) << n;
}

TEST(ExtendCaseTwo, Examples) {
  const ZModel m = one_generator();
  CutSpec p;
  p.residues = ResidueProfile::standard(1);
  const ModelElement b = m.generator(0);
  const CaseTwoExtension e = extend_case2(m, p, b);
  const Generator& eps = e.model.generators()[e.epsilon];
  EXPECT_EQ(*eps.position.leading_exponent(), 1);
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(eps.profile.residue(n), mod(Integer(1), n));
  EXPECT_EQ(e.model.residue(e.realization, 6), 1);

  const ModelElement epsilon = e.model.generator(e.epsilon);
  EXPECT_EQ(e.model.sign(epsilon), 1);
  EXPECT_EQ(e.model.sign(e.model.element(-5, {1, 0})), 1);
  EXPECT_EQ(e.model.sign(e.model.element(1000, {0, -1})), -1);
  EXPECT_EQ(e.model.eval_atomic(epsilon, e.model.constant(1000000)), 1);
  EXPECT_EQ(e.model.eval_atomic(e.model.scale(1000000, epsilon), b), -1);

  EXPECT_THROW(extend_case2(m, p, m.constant(5)), PreconditionViolation);
  EXPECT_THROW(extend_case2(m, p, m.scale(-1, b)), PreconditionViolation);
}

TEST(ExtendCaseTwo, SignRuleOnRandomCombinations) {
  const ZModel old = two_generator_model();
  const CaseTwoExtension e = extend_case2(old, testing::realized_cut(old), old.generator(1));
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<int> small(-3, 3), big(-1000, 1000);
  for (int i = 0; i < 200; ++i) {
    const Integer r = big(rng), s = small(rng);
    std::vector<Integer> t{small(rng), small(rng)};
    if (i % 4 == 0) t = {0, 0};
    std::vector<Integer> full = t;
    full.push_back(s);
    const ModelElement x = e.model.element(r, full);
    EXPECT_EQ(e.model.eval_atomic(x, e.model.constant(0)), testing::sign_rule(old, r, s, t));
  }
}

TEST(ExtensionLemma, ConservativeAndRealizing) {
  const ZModel old = two_generator_model();
  const std::vector<ModelElement> tuple{old.generator(0), old.generator(1),
                                        old.sub(old.generator(1), old.scale(5, old.generator(0)))};
  const TypeOracle before = type_of(old, tuple);

  const CutSpec p1 = testing::omitted_cut(old);
  const CaseOneExtension one = extend_case1(old, p1);
  EXPECT_TRUE(testing::disagreements(before, type_of(one.model, tuple), 2000).empty());
  EXPECT_TRUE(testing::disagreements(cut_type(old, p1), type_of(one.model, {one.b, old.generator(0)}), 2000).empty());

  const CutSpec p2 = testing::realized_cut(old);
  const CaseTwoExtension two = extend_case2(old, p2, old.generator(1));
  EXPECT_TRUE(testing::disagreements(before, type_of(two.model, tuple), 2000).empty());
  EXPECT_TRUE(
      testing::disagreements(cut_type(old, p2), type_of(two.model, {two.realization, old.generator(0)}), 2000).empty());
}

TEST(TypeOf, EmptyTupleIsTheTheory) {
  const TypeOracle t = type_of(two_generator_model(), {});
  EXPECT_TRUE(t.contains(pr("A x. E y. (x = y + y | x = y + y + 1)")));
  EXPECT_FALSE(t.contains(pr("E x. (0 < x & x < 1)")));
  EXPECT_FALSE(t.contains(pr("0 < a")));
}

TEST(TypeOf, ReductionAgreesWithDirect) {
  const ZModel old = two_generator_model();
  const CaseOneExtension one = extend_case1(old, testing::omitted_cut(old));
  const ModelElement b = one.b, c1 = old.generator(0), c2 = old.generator(1);
  const TypeOracle direct = type_of(one.model, {b, c1, c2});
  TypeReduction oracles{type_of(one.model, {b, c1}), type_of(old, {c1, c1, c2}), 1};
  const TypeOracle reduced = type_of_reduction(oracles, 3);
  EXPECT_TRUE(testing::disagreements(direct, reduced, 2000).empty());
  // The interval atom 1 < b < c1 is settled by bounds found in dcl(c1).
  EXPECT_TRUE(reduced.contains(pr("1 < a & a < b")));
  EXPECT_FALSE(reduced.contains(pr("c < a")));
  for (const char* text : {"a + a + a + a + a + a + a < b", "P3(a + b)", "E x. (x + x = a)", "P5(a + 2)",
                           "E x. (a < x & x < c & P7(x))", "A x. (x < a -> x < b)", "c < a + b + 100"}) {
    EXPECT_EQ(direct.contains(pr(text)), reduced.contains(pr(text))) << text;
  }
}

TEST(TypeOf, ReductionReportsBudget) {
  const ZModel old = two_generator_model();
  const CaseOneExtension one = extend_case1(old, testing::omitted_cut(old));
  TypeReduction oracles{type_of(one.model, {one.b, old.generator(0)}), type_of(old, {old.generator(0)}), 1};
  Budget tiny;
  tiny.search_terms = 3;
  EXPECT_THROW(decide_by_reduction(pr("1000 < a"), 1, oracles, tiny), BudgetExhausted);
  EXPECT_TRUE(decide_by_reduction(pr("1000 < a"), 1, oracles));
}

TEST(ZModel, JsonRoundTrip) {
  const ZModel old = two_generator_model();
  const CaseTwoExtension e = extend_case2(old, testing::realized_cut(old), old.generator(1));
  const ZModel back = ZModel::from_json_text(e.model.to_json_text());
  EXPECT_EQ(back.to_json_text(), e.model.to_json_text());
  std::vector<ModelElement> tuple{e.realization, e.model.generator(0), e.model.generator(e.epsilon)};
  EXPECT_TRUE(testing::disagreements(type_of(e.model, tuple), type_of(back, tuple), 100).empty());

  try {
    ZModel::from_json_text(
        R"({"v":1,"generators":[{"name":"c1","position":[{"coefficient":"1","exponent":"1"}],)"
        R"("profile":{"kind":"prefix","residues":[{"modulus":"2","residue":"1"},{"modulus":"4","residue":"0"}]}}]})");
    FAIL();
  } catch (const SchemaError& err) {
    EXPECT_EQ(err.pointer(), "/generators/0/profile/residues/1");
  }
  EXPECT_THROW(ZModel::from_json_text(R"({"generators":[{"name":"x"}]})"), SchemaError);
  EXPECT_THROW(ZModel::from_json_text("[1,"), SchemaError);
}

}  // namespace
}  // namespace saturator

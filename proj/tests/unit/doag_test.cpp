// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "saturator/doag.hpp"
#include "saturator/errors.hpp"

namespace saturator {
namespace {

HahnVector mono(const Rational& e, const Rational& c) { return HahnVector::monomial(e, c); }

Rational q(const char* text) { return parse_rational(text); }

HahnVector random_vector(std::mt19937& rng) {
  HahnVector v;
  const int n = static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    Rational e(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
    e.canonicalize();
    Rational c(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 4) + 1);
    c.canonicalize();
    v = v + mono(e, c);
  }
  return v;
}

TEST(HahnArith, CancellationPrunesZeros) {
  HahnVector v = mono(0, 1) + mono(0, -1);
  EXPECT_TRUE(v.is_zero());
  EXPECT_EQ(v.support_size(), 0u);
}

TEST(HahnArith, DivisionIsExact) {
  HahnVector v = mono(1, 1);
  HahnVector third = v.divided(3);
  EXPECT_EQ(third, mono(1, q("1/3")));
  EXPECT_EQ(third.scaled(3), v);
  EXPECT_THROW(v.divided(0), DomainError);
}

TEST(HahnArith, CoordinatewiseSumTable) {
  HahnVector a = mono(1, 1) + mono(0, 5);
  HahnVector b = mono(1, -1);
  EXPECT_EQ(a + b, mono(0, 5));
  EXPECT_EQ(to_json_text(a), R"([{"coefficient":"5","exponent":"0"},{"coefficient":"1","exponent":"1"}])");
}

TEST(HahnOrder, Examples) {
  EXPECT_EQ(compare(mono(1, 1), mono(0, Rational(1000000000))), 1);
  EXPECT_EQ(compare(mono(0, q("1/2")), mono(0, q("1/3"))), 1);
  EXPECT_EQ(compare(mono(2, -1) + mono(5, 1), mono(5, 1)), -1);
}

TEST(HahnOrder, OrderedGroupAxiomsOnRandomTriples) {
  std::mt19937 rng(5);
  for (int i = 0; i < 1000; ++i) {
    HahnVector a = random_vector(rng), b = random_vector(rng), c = random_vector(rng);
    EXPECT_EQ(compare(a, b), -compare(b, a));
    if (compare(a, b) <= 0 && compare(b, c) <= 0) EXPECT_LE(compare(a, c), 0);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(compare(a + c, b + c), compare(a, b));
    // Definition replay: sign of the coefficient at the largest exponent of a - b.
    const HahnVector d = a - b;
    const int expected = d.is_zero() ? 0 : sgn(d.terms().rbegin()->second);
    EXPECT_EQ(compare(a, b), expected);
  }
}

TEST(HahnOrder, Divisibility) {
  std::mt19937 rng(6);
  for (int i = 0; i < 200; ++i) {
    HahnVector g = random_vector(rng);
    for (int n = 1; n <= 50; ++n) EXPECT_EQ(g.divided(n).scaled(n), g);
  }
}

TEST(HahnOrder, RealCoefficientsCarryBudgets) {
  const ComputableReal sqrt2("sqrt2", [](std::size_t k) {
    Rational lo(1), hi(2);
    for (std::size_t i = 0; i < k; ++i) {
      Rational mid = (lo + hi) / 2;
      (mid * mid < 2 ? lo : hi) = mid;
    }
    return RationalInterval{lo, hi};
  });
  RealHahnVector a = RealHahnVector::monomial(1, sqrt2);
  RealHahnVector b = RealHahnVector::monomial(1, ComputableReal::rational(q("7/5")));
  EXPECT_EQ(compare(a, b), 1);
  EXPECT_EQ(compare(b, a), -1);
  // a - a has an uncertified zero leading coefficient: its sign cannot be settled.
  Budget small;
  small.refine_steps = 40;
  EXPECT_THROW(compare(a, a, small), BudgetExhausted);
}

TEST(ArchEquiv, Examples) {
  ArchEquivalence r = arch_equiv(mono(0, 1), mono(0, 2));
  EXPECT_TRUE(r.equivalent);
  EXPECT_EQ(r.witness, 3);
  EXPECT_LT(compare(mono(0, 1), mono(0, 2).scaled(3)), 0);
  EXPECT_LT(compare(mono(0, 2), mono(0, 1).scaled(3)), 0);

  const HahnVector g = mono(0, 1), h = mono(1, 1);
  EXPECT_FALSE(arch_equiv(g, h).equivalent);
  for (Integer n = 1; n <= Integer(1) << 20; n *= 2) {
    EXPECT_LT(compare(g.scaled(Rational(n)), h), 0);
  }
  EXPECT_THROW(arch_equiv(HahnVector{}, g), DomainError);
}

TEST(ArchEquiv, AgreesWithLeadingExponentsAndIsAnEquivalence) {
  std::mt19937 rng(8);
  std::vector<HahnVector> samples;
  while (samples.size() < 60) {
    HahnVector v = random_vector(rng);
    if (!v.is_zero()) samples.push_back(v);
  }
  for (const auto& g : samples) {
    EXPECT_TRUE(arch_equiv(g, g).equivalent);
    for (const auto& h : samples) {
      const ArchEquivalence r = arch_equiv(g, h);
      EXPECT_EQ(r.equivalent, *g.leading_exponent() == *h.leading_exponent());
      EXPECT_EQ(r.equivalent, arch_equiv(h, g).equivalent);
      if (r.equivalent) {
        EXPECT_LT(compare(abs(g), abs(h).scaled(Rational(r.witness))), 0);
      } else {
        // Witness search: some power of two separates the classes.
        const HahnVector& small = compare_classes(g, h) < 0 ? g : h;
        const HahnVector& large = compare_classes(g, h) < 0 ? h : g;
        bool separated = false;
        for (Integer n = 1; n <= Integer(1) << 20 && !separated; n *= 2) {
          separated = compare(abs(small).scaled(Rational(n)), abs(large)) < 0;
        }
        EXPECT_TRUE(separated);
        EXPECT_LT(compare(abs(small).scaled(Rational(Integer(1) << 20)), abs(large)), 0);
      }
      for (const auto& k : samples) {
        if (r.equivalent && arch_equiv(h, k).equivalent) EXPECT_TRUE(arch_equiv(g, k).equivalent);
      }
    }
  }
}

TEST(HarnikRessayre, RationalExponentsPass) {
  HrReport r = harnik_ressayre_check(ExponentSet::rationals(), HrOptions{100, 1000, 3});
  EXPECT_TRUE(r.passed) << r.failure.value_or("");
  EXPECT_EQ(r.pairs_checked, 100u);
  EXPECT_EQ(r.density.size(), 100u);
  EXPECT_EQ(r.triples_checked, 1000u);
  for (const auto& w : r.density) {
    EXPECT_LT(w.lower, w.middle);
    EXPECT_LT(w.middle, w.upper);
  }
  ASSERT_TRUE(r.endpoint_witness);
}

TEST(HarnikRessayre, EmptyEvidencePasses) {
  HrReport r = harnik_ressayre_check(ExponentSet::rationals(), HrOptions{0, 0, 1});
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.pairs_checked, 0u);
  EXPECT_TRUE(r.density.empty());
}

TEST(HarnikRessayre, IntegerSupportFailsDensity) {
  HrReport r = harnik_ressayre_check(ExponentSet::integers(), HrOptions{100, 10, 3});
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.density_failure);
  EXPECT_EQ(r.density_failure->second - r.density_failure->first, 1);
}

TEST(SimplestBetween, Examples) {
  EXPECT_EQ(simplest_between(std::nullopt, std::nullopt), 0);
  EXPECT_EQ(simplest_between(Rational(0), Rational(1)), q("1/2"));
  EXPECT_EQ(simplest_between(q("1/3"), q("1/2")), q("2/5"));
  EXPECT_EQ(simplest_between(q("-7/2"), q("-3")), q("-10/3"));
  EXPECT_EQ(simplest_between(Rational(3), std::nullopt), 4);
  EXPECT_EQ(simplest_between(std::nullopt, Rational(-3)), -4);
  // Scan oracle: nothing strictly inside has a smaller denominator.
  std::mt19937 rng(2);
  for (int i = 0; i < 300; ++i) {
    Rational a(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1);
    Rational b(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1);
    a.canonicalize();
    b.canonicalize();
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    const Rational s = simplest_between(a, b);
    ASSERT_LT(a, s);
    ASSERT_LT(s, b);
    for (long d = 1; d < s.get_den().get_si(); ++d) {
      const Integer k = floor(a * d) + 1;
      ASSERT_FALSE(Rational(k, d) < b) << a << " " << b << " " << s;
    }
  }
}

TEST(LinearDecision, Sentences) {
  auto og = [](const char* text) { return parse_formula(text, Signature::OrderedGroup); };
  EXPECT_TRUE(decide_linear_sentence(og("A x. A y. (x < y -> E z. (x < z & z < y))")));
  EXPECT_TRUE(decide_linear_sentence(og("A x. E y. x < y")));
  EXPECT_FALSE(decide_linear_sentence(og("E x. A y. y < x | y = x")));
  EXPECT_TRUE(decide_linear_sentence(og("A x. E y. 2*y = x")));
  EXPECT_FALSE(decide_linear_sentence(og("E x. (0 < x & 3*x < 0)")));
  EXPECT_TRUE(decide_linear_sentence(og("A v. A w. (0 < w & 2*v < 3*w -> !(3*w < 2*v))")));
  EXPECT_TRUE(decide_linear_sentence(og("A x. (!(x = 0) -> 0 < x | x < 0)")));
  EXPECT_THROW(decide_linear_sentence(og("x < 0")), DomainError);
  EXPECT_TRUE(decide_linear_sentence(parse_formula("E v. (1 < 3*v & 2*v < 1)", Signature::OrderedRing)));
  EXPECT_THROW(decide_linear_sentence(parse_formula("E v. v*v < 0", Signature::OrderedRing)), Unsupported);
}

}  // namespace
}  // namespace saturator

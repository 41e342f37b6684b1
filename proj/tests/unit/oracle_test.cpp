// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <thread>

#include "saturator/errors.hpp"
#include "saturator/oracle.hpp"

namespace saturator {
namespace {

MembershipOracle evens() {
  return MembershipOracle("evens", [](const Integer& n) { return mod(n, 2) == 0; });
}

TEST(Join, DefinitionUnfolding) {
  MembershipOracle z = join(evens(), MembershipOracle::empty());
  EXPECT_TRUE(z.contains(4));
  EXPECT_FALSE(z.contains(1));
  EXPECT_FALSE(z.contains(2));
}

TEST(Join, SelfJoinHalvesAgree) {
  MembershipOracle x = MembershipOracle::eventually_periodic("1101", "011");
  MembershipOracle z = join(x, x);
  for (unsigned long n = 0; n < 100; ++n) {
    EXPECT_EQ(z.contains(Integer(2 * n)), x.contains(Integer(n)));
    EXPECT_EQ(z.contains(Integer(2 * n + 1)), x.contains(Integer(n)));
  }
}

// A reduction is a small program asking oracle 0 or 1 about derived indices and
// combining the answers.  It runs either against (x, y) directly or against x (+) y.
struct Reduction {
  struct Step {
    int which;
    unsigned long mul;
    unsigned long add;
  };
  std::vector<Step> steps;
  unsigned mask;

  template <class Ask>
  bool run(const Integer& n, Ask ask) const {
    unsigned bits = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Integer k = n * steps[i].mul + steps[i].add;
      if (ask(steps[i].which, k)) bits |= 1u << i;
    }
    return (mask >> bits) & 1u;
  }
};

TEST(Join, ReductionsReplayThroughTheJoin) {
  std::mt19937 rng(11);
  MembershipOracle x = MembershipOracle::eventually_periodic("10010", "1100101");
  MembershipOracle y("squares", [](const Integer& n) {
    Integer r = sqrt(n);
    return r * r == n;
  });
  MembershipOracle z = join(x, y);
  for (int trial = 0; trial < 100; ++trial) {
    Reduction red;
    const int steps = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < steps; ++i) red.steps.push_back({static_cast<int>(rng() % 2), rng() % 5 + 1, rng() % 7});
    red.mask = rng() & ((1u << (1u << steps)) - 1);
    for (unsigned long n = 0; n < 30; ++n) {
      const bool direct = red.run(Integer(n), [&](int which, const Integer& k) {
        return which == 0 ? x.contains(k) : y.contains(k);
      });
      const bool via_join =
          red.run(Integer(n), [&](int which, const Integer& k) { return z.contains(2 * k + which); });
      ASSERT_EQ(direct, via_join);
    }
  }
}

TEST(Membership, CacheIsDeterministicAndShared) {
  int calls = 0;
  MembershipOracle o("counting", [&calls](const Integer& n) {
    ++calls;
    return n > 3;
  });
  MembershipOracle copy = o;
  EXPECT_TRUE(o.contains(5));
  EXPECT_TRUE(copy.contains(5));
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(o.query_log().size(), 1u);
  EXPECT_EQ(o.cached(5), true);
  EXPECT_EQ(o.cached(6), std::nullopt);
}

TEST(Membership, ConcurrentQueriesAreLinearizable) {
  MembershipOracle o("mod7", [](const Integer& n) { return mod(n, 7) == 3; });
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&o] {
      for (unsigned long n = 0; n < 500; ++n) o.contains(Integer(n));
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(o.query_count(), 500u);
  EXPECT_EQ(o.query_log().size(), 500u);
}

ComputableReal sqrt2() {
  // Bisection on x^2 - 2 inside [1, 2].
  return ComputableReal("sqrt2", [](std::size_t level) {
    Rational lo = 1, hi = 2;
    for (std::size_t i = 0; i < level; ++i) {
      Rational mid = (lo + hi) / 2;
      if (mid * mid < 2) lo = mid; else hi = mid;
    }
    return RationalInterval{lo, hi};
  });
}

TEST(ComputableReal, CompareAgainstCut) {
  EXPECT_EQ(sqrt2().compare(1), CutAnswer::Above);
  EXPECT_EQ(sqrt2().compare(Rational(3, 2)), CutAnswer::Below);
  EXPECT_EQ(ComputableReal::rational(Rational(3, 2)).compare(Rational(3, 2)), CutAnswer::Equal);
}

TEST(ComputableReal, LiouvilleSeries) {
  ComputableReal r = ComputableReal::series(10, "factorial");
  EXPECT_EQ(r.compare(Rational(11, 100)), CutAnswer::Above);
  EXPECT_EQ(r.compare(Rational(111, 1000)), CutAnswer::Below);
  EXPECT_EQ(r.compare(Rational(110001, 1000000)), CutAnswer::Above);
}

TEST(ComputableReal, UncertifiedEqualityExhaustsBudget) {
  ComputableReal r("one", [](std::size_t) { return RationalInterval{1, 1}; });
  Budget small;
  small.refine_steps = 50;
  EXPECT_THROW(r.compare(1, small), BudgetExhausted);
}

TEST(ComputableReal, Arithmetic) {
  ComputableReal two = sqrt2() * sqrt2();
  EXPECT_EQ(two.compare(2 - Rational(1, 1000)), CutAnswer::Above);
  EXPECT_EQ(two.compare(2 + Rational(1, 1000)), CutAnswer::Below);

  ComputableReal half = ComputableReal::rational(Rational(1, 2));
  ComputableReal third = ComputableReal::rational(Rational(1, 3));
  ComputableReal sum = half + third;
  ASSERT_TRUE(sum.certificate());
  EXPECT_EQ(*sum.certificate(), Rational(5, 6));
  EXPECT_EQ(sum.compare(Rational(5, 6)), CutAnswer::Equal);

  ComputableReal a = ComputableReal::series(10, "factorial");
  ComputableReal same = a + ComputableReal::rational(0);
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    Rational q(static_cast<long>(rng() % 2001) - 1000, 1000 + rng() % 7);
    q.canonicalize();
    EXPECT_EQ(a.compare(q), same.compare(q));
  }

  ComputableReal inv = sqrt2().reciprocal();
  EXPECT_EQ(inv.compare(Rational(7, 10)), CutAnswer::Above);
  EXPECT_EQ(inv.compare(Rational(71, 100)), CutAnswer::Below);
  EXPECT_THROW(ComputableReal::rational(0).reciprocal(), DomainError);
}

TEST(ComputableReal, MonotonicityAudit) {
  ComputableReal r = sqrt2();
  std::mt19937 rng(9);
  for (int i = 0; i < 300; ++i) {
    Rational q(static_cast<long>(rng() % 4001) - 2000, 997);
    q.canonicalize();
    r.compare(q);
  }
  EXPECT_EQ(r.query_log().size(), 300u);
  EXPECT_FALSE(r.audit_monotonicity());

  // Approximations that jump out of the previous interval are refused.
  ComputableReal broken("broken", [](std::size_t level) {
    return level == 0 ? RationalInterval{0, 3} : RationalInterval{4, 5};
  });
  EXPECT_THROW(broken.at(1), ConsistencyViolation);
}

TEST(Budget, EnvironmentOverride) {
  ::setenv("SATURATOR_BUDGET", "77", 1);
  Budget b = Budget::from_environment();
  EXPECT_EQ(b.refine_steps, 77u);
  EXPECT_EQ(b.search_terms, 77u);
  EXPECT_EQ(b.bisections, 256u);
  ::unsetenv("SATURATOR_BUDGET");
  EXPECT_EQ(Budget::from_environment().refine_steps, 10000u);
}

TEST(TypeOracle, LazyConsistency) {
  // A deliberately inconsistent "type" that accepts everything.
  TypeOracle all = TypeOracle::from_decider(Signature::Presburger, 1, "all", [](const Formula&) { return true; });
  Formula f = parse_formula("0 < a", Signature::Presburger);
  EXPECT_TRUE(all.contains(f));
  EXPECT_THROW(all.contains(Formula::negation(f)), ConsistencyViolation);
  EXPECT_TRUE(all.consistency_violation());

  TypeOracle pos = TypeOracle::from_decider(Signature::Presburger, 1, "positive", [](const Formula& g) {
    return g.kind() != Formula::Kind::Not;
  });
  EXPECT_TRUE(pos.contains(f));
  EXPECT_FALSE(pos.contains(Formula::negation(f)));
  EXPECT_FALSE(pos.contains(parse_formula("0 < b", Signature::Presburger)));
  EXPECT_FALSE(pos.consistency_violation());
  EXPECT_FALSE(pos.missing_axiom({parse_formula("0 < 1", Signature::Presburger)}));
}

BinaryTreeOracle full_tree() {
  return BinaryTreeOracle([](const std::string&) { return true; }, "full");
}

BinaryTreeOracle no_double_ones() {
  return BinaryTreeOracle([](const std::string& s) { return s.find("11") == std::string::npos; }, "no11");
}

BinaryTreeOracle diagonal() {
  // Exactly one string per level: the prefixes of 1011011101111...
  return BinaryTreeOracle([](const std::string& s) {
    std::string spine;
    for (int run = 1; spine.size() < s.size(); ++run) {
      spine.append(static_cast<std::size_t>(run), '1');
      spine.push_back('0');
    }
    return spine.compare(0, s.size(), s) == 0;
  }, "diagonal");
}

TEST(BoundedPath, LeftmostStrings) {
  EXPECT_EQ(bounded_path(full_tree(), 5).path, "00000");
  BinaryTreeOracle t = no_double_ones();
  PathResult r = bounded_path(t, 4);
  EXPECT_EQ(r.status, PathResult::Status::Found);
  EXPECT_EQ(r.path, "0000");
  EXPECT_TRUE(t.on_tree("1010"));
}

TEST(BoundedPath, DiagonalMatchesExhaustiveEnumeration) {
  BinaryTreeOracle t = diagonal();
  PathResult r = bounded_path(t, 10);
  ASSERT_EQ(r.status, PathResult::Status::Found);
  std::string only;
  int count = 0;
  for (unsigned bits = 0; bits < (1u << 10); ++bits) {
    std::string s;
    for (int i = 9; i >= 0; --i) s.push_back((bits >> i) & 1 ? '1' : '0');
    if (t.on_tree(s)) {
      only = s;
      ++count;
    }
  }
  EXPECT_EQ(count, 1);
  EXPECT_EQ(r.path, only);
  EXPECT_FALSE(t.downward_closure_violation());
}

TEST(BoundedPath, AbsentVersusBudget) {
  BinaryTreeOracle finite([](const std::string& s) { return s.size() <= 3; });
  EXPECT_EQ(bounded_path(finite, 5).status, PathResult::Status::Absent);
  BinaryTreeOracle only_ones_deep([](const std::string& s) { return s.find('0') == std::string::npos || s.size() < 12; });
  PathResult r = bounded_path(only_ones_deep, 14, 100);
  EXPECT_EQ(r.status, PathResult::Status::BudgetExhausted);
  EXPECT_EQ(bounded_path(only_ones_deep, 14).path, std::string(14, '1'));
}

TEST(BoundedPath, UserSuppliedPath) {
  BinaryTreeOracle t = no_double_ones();
  EXPECT_TRUE(path_stays_on_tree(t, [](std::size_t i) { return i % 2 == 1; }, 20));
  EXPECT_FALSE(path_stays_on_tree(t, [](std::size_t i) { return i > 4; }, 20));
}

}  // namespace
}  // namespace saturator

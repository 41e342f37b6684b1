// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include "saturator/tree_check.hpp"

#include <functional>

#include "saturator/doag.hpp"
#include "saturator/errors.hpp"
#include "saturator/presburger.hpp"
#include "saturator/rcf.hpp"

namespace saturator {

namespace {

const Integer kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

Formula conj(const Formula& a, const Formula& b) {
  if (a == Formula::truth()) return b;
  return Formula::conjunction(a, b);
}

// q * scale < v as num * scale < den * v (ring: num < den * v).
Formula rational_below(Signature sig, const Rational& q) {
  const Term v = Term::var("v");
  const Integer num = q.get_num(), den = q.get_den();
  const Term rhs = den == 1 ? v : Term::mul(Term::constant(den), v);
  if (sig == Signature::OrderedRing) return Formula::lt(Term::constant(num), rhs);
  const Term w = Term::var("w");
  Term lhs = num == 0 ? Term::constant(0) : num == 1 ? w : Term::mul(Term::constant(num), w);
  return Formula::lt(lhs, rhs);
}

Formula family(Signature sig, const std::string& sigma) {
  Formula f = Formula::truth();
  if (sig == Signature::Presburger) {
    if (sigma.size() > std::size(kPrimes)) throw DomainError("not enough primes for this depth");
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const Formula atom = Formula::divides(kPrimes[i], Term::var("v"));
      f = conj(f, sigma[i] == '1' ? atom : Formula::negation(atom));
    }
    return f;
  }
  if (sig == Signature::OrderedGroup && !sigma.empty()) f = Formula::lt(Term::constant(0), Term::var("w"));
  std::optional<Rational> lo, hi;
  for (char bit : sigma) {
    const Rational q = simplest_between(lo, hi);
    const Formula atom = rational_below(sig, q);
    if (bit == '1') {
      f = conj(f, atom);
      lo = q;
    } else {
      f = conj(f, Formula::negation(atom));
      hi = q;
    }
  }
  return f;
}

class Checker {
 public:
  explicit Checker(Signature sig) : sig_(sig) {}

  bool satisfiable(const Formula& f) const {
    switch (sig_) {
      case Signature::Presburger:
        return decide_standard(Formula::exists("v", f));
      case Signature::OrderedGroup:
        return decide_linear_sentence(Formula::exists("w", Formula::exists("v", f)));
      case Signature::OrderedRing:
        for (const auto& c : decompose(f, "v").cells) {
          if (c.value) return true;
        }
        return false;
    }
    return false;
  }

 private:
  Signature sig_;
};

}  // namespace

Formula tree_formula(Signature sig, const std::string& sigma) {
  for (char c : sigma) {
    if (c != '0' && c != '1') throw ParseError("node strings use only 0 and 1", 0);
  }
  return family(sig, sigma);
}

TreeReport perfect_tree_check(Signature sig, std::size_t depth, std::size_t cap) {
  if (depth > cap) throw DomainError("depth " + std::to_string(depth) + " exceeds the cap " + std::to_string(cap));
  TreeReport report;
  report.sig = sig;
  report.depth = depth;
  const Checker checker(sig);
  auto fail = [&](const std::string& sigma, int condition, std::optional<std::string> tau, const Formula& f) {
    report.passed = false;
    report.failure = TreeFailure{sigma, condition, std::move(tau), to_string(f)};
  };
  // Breadth-first over nodes, shortest first.
  std::vector<std::string> level{""};
  for (std::size_t len = 0; len <= depth && report.passed; ++len) {
    std::vector<std::string> next;
    for (const auto& sigma : level) {
      const Formula phi = tree_formula(sig, sigma);
      if (!sigma.empty()) {
        ++report.nodes;
        ++report.checks;
        if (!checker.satisfiable(phi)) {
          fail(sigma, 1, std::nullopt, phi);
          return report;
        }
        for (std::size_t k = 1; k < sigma.size(); ++k) {
          const std::string tau = sigma.substr(0, k);
          const Formula gap = Formula::conjunction(phi, Formula::negation(tree_formula(sig, tau)));
          ++report.checks;
          if (checker.satisfiable(gap)) {
            fail(sigma, 2, tau, gap);
            return report;
          }
        }
      }
      if (len < depth) {
        const Formula both =
            Formula::conjunction(tree_formula(sig, sigma + "0"), tree_formula(sig, sigma + "1"));
        ++report.checks;
        if (checker.satisfiable(both)) {
          fail(sigma, 3, std::nullopt, both);
          return report;
        }
        next.push_back(sigma + "0");
        next.push_back(sigma + "1");
      }
    }
    level = std::move(next);
  }
  return report;
}

}  // namespace saturator

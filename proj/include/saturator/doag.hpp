// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "saturator/errors.hpp"
#include "saturator/formula.hpp"
#include "saturator/numeric.hpp"
#include "saturator/oracle.hpp"

namespace saturator {

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static bool is_zero(const Rational& c) { return c == 0; }
  static int sign(const Rational& c, const Budget&) { return sgn(c); }
  static Rational zero() { return 0; }
  static Rational scale(const Rational& c, const Rational& q) { return c * q; }
};

// Coefficients are cut oracles; only certified zeros are pruned.
template <>
struct CoeffTraits<ComputableReal> {
  static bool is_zero(const ComputableReal& c) { return c.certificate() && *c.certificate() == 0; }
  static int sign(const ComputableReal& c, const Budget& budget) { return c.sign(budget); }
  static ComputableReal zero() { return ComputableReal::rational(0); }
  static ComputableReal scale(const ComputableReal& c, const Rational& q) { return c.scaled(q); }
};

// Finite-support function from rational exponents to coefficients, ordered
// lexicographically with the largest exponent dominating.  Exponent 0 is the class of
// the standard part; larger exponents are larger archimedean classes.
template <class C>
class BasicHahnVector {
 public:
  using Traits = CoeffTraits<C>;
  using Map = std::map<Rational, C>;

  BasicHahnVector() = default;
  static BasicHahnVector monomial(const Rational& exponent, C coeff) {
    BasicHahnVector v;
    v.set(exponent, std::move(coeff));
    return v;
  }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  C coefficient(const Rational& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Traits::zero() : it->second;
  }
  void set(const Rational& exponent, C coeff) {
    if (Traits::is_zero(coeff)) {
      terms_.erase(exponent);
    } else {
      terms_.insert_or_assign(exponent, std::move(coeff));
    }
  }

  // Largest exponent in the support.
  std::optional<Rational> leading_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }
  const C& leading_coefficient() const {
    if (terms_.empty()) throw DomainError("zero vector has no leading coefficient");
    return terms_.rbegin()->second;
  }

  BasicHahnVector operator+(const BasicHahnVector& o) const {
    BasicHahnVector r = *this;
    for (const auto& [e, c] : o.terms_) {
      auto it = r.terms_.find(e);
      if (it == r.terms_.end()) {
        r.set(e, c);
      } else {
        r.set(e, it->second + c);
      }
    }
    return r;
  }
  BasicHahnVector operator-() const { return scaled(-1); }
  BasicHahnVector operator-(const BasicHahnVector& o) const { return *this + (-o); }

  BasicHahnVector scaled(const Rational& q) const {
    BasicHahnVector r;
    if (q == 0) return r;
    for (const auto& [e, c] : terms_) r.set(e, Traits::scale(c, q));
    return r;
  }
  BasicHahnVector divided(const Integer& n) const {
    if (n < 1) throw DomainError("divide-by-n requires n >= 1");
    return scaled(Rational(1) / Rational(n));
  }

  // Sign of the leading coefficient.
  int sign(const Budget& budget = Budget{}) const {
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!Traits::is_zero(it->second)) return Traits::sign(it->second, budget);
    }
    return 0;
  }

 private:
  Map terms_;
};

using HahnVector = BasicHahnVector<Rational>;
using RealHahnVector = BasicHahnVector<ComputableReal>;

bool operator==(const HahnVector& a, const HahnVector& b);
inline bool operator!=(const HahnVector& a, const HahnVector& b) { return !(a == b); }

// -1, 0, 1 for a < b, a = b, a > b.
int compare(const HahnVector& a, const HahnVector& b);
int compare(const RealHahnVector& a, const RealHahnVector& b, const Budget& budget = Budget{});

HahnVector abs(const HahnVector& v);

struct ArchEquivalence {
  bool equivalent = false;
  // When equivalent: |g| < n|h| and |h| < n|g| both hold for n = witness.
  Integer witness = 0;
};
// Throws DomainError on a zero argument.
ArchEquivalence arch_equiv(const HahnVector& g, const HahnVector& h);
// Order on archimedean classes of non-zero vectors: -1, 0, 1.
int compare_classes(const HahnVector& g, const HahnVector& h);

std::string to_string(const HahnVector& v);
std::string to_json_text(const HahnVector& v);

// Sentences over the ordered-group signature (and linear ordered-ring sentences) decided
// over the rationals by Fourier-Motzkin elimination.
bool decide_linear_sentence(const Formula& sentence);

// Exponent sets for Hahn groups of the form "finite-support functions from the set to Q".
struct ExponentSet {
  enum class Kind { Rationals, Integers };
  Kind kind = Kind::Rationals;

  static ExponentSet rationals() { return {Kind::Rationals}; }
  static ExponentSet integers() { return {Kind::Integers}; }
  static std::optional<ExponentSet> parse(const std::string& name);
  std::string name() const;

  bool contains(const Rational& q) const;
  // An exponent strictly between lo and hi, if the set has one.
  std::optional<Rational> between(const Rational& lo, const Rational& hi) const;
  std::optional<Rational> above(const Rational& q) const;
  std::optional<Rational> below(const Rational& q) const;
};

struct HrOptions {
  std::size_t pairs = 100;
  std::size_t triples = 1000;
  std::uint64_t seed = 1;
};

struct DensityWitness {
  Rational lower;
  Rational middle;
  Rational upper;
};

struct HrReport {
  bool passed = true;
  std::size_t pairs_checked = 0;
  std::size_t triples_checked = 0;
  std::vector<DensityWitness> density;
  // Smallest and largest sampled class with exponents strictly below / above them.
  std::optional<std::pair<Rational, Rational>> endpoint_witness;
  std::optional<Rational> embedding_class;
  // First failure: a class pair without an intermediate class, or a failed triple.
  std::optional<std::pair<Rational, Rational>> density_failure;
  std::optional<std::string> failure;
};

// Desk-scale evidence for: the class order is dense without endpoints, and a class is
// an order-preserving homomorphic image of (Q, +) under c -> c t^gamma.
HrReport harnik_ressayre_check(const ExponentSet& exponents, const HrOptions& options = HrOptions{});

}  // namespace saturator

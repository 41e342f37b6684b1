// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include "saturator/doag.hpp"

#include <algorithm>
#include <random>

namespace saturator {

bool operator==(const HahnVector& a, const HahnVector& b) { return a.terms() == b.terms(); }

int compare(const HahnVector& a, const HahnVector& b) { return (a - b).sign(); }

int compare(const RealHahnVector& a, const RealHahnVector& b, const Budget& budget) {
  return (a - b).sign(budget);
}

HahnVector abs(const HahnVector& v) { return v.sign() < 0 ? -v : v; }

ArchEquivalence arch_equiv(const HahnVector& g, const HahnVector& h) {
  if (g.is_zero() || h.is_zero()) throw DomainError("archimedean class of 0 is undefined");
  ArchEquivalence r;
  if (*g.leading_exponent() != *h.leading_exponent()) return r;
  const Rational a = ::abs(g.leading_coefficient());
  const Rational b = ::abs(h.leading_coefficient());
  const Rational ratio = a > b ? Rational(a / b) : Rational(b / a);
  const Integer n = ceil(ratio) + 1;
  const HahnVector ag = abs(g), ah = abs(h);
  if (compare(ag, ah.scaled(Rational(n))) >= 0 || compare(ah, ag.scaled(Rational(n))) >= 0) {
    throw ConsistencyViolation("archimedean witness failed verification");
  }
  r.equivalent = true;
  r.witness = n;
  return r;
}

int compare_classes(const HahnVector& g, const HahnVector& h) {
  if (g.is_zero() || h.is_zero()) throw DomainError("archimedean class of 0 is undefined");
  return sgn(Rational(*g.leading_exponent() - *h.leading_exponent()));
}

std::string to_string(const HahnVector& v) {
  if (v.is_zero()) return "0";
  std::string out;
  for (auto it = v.terms().rbegin(); it != v.terms().rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(it->second) + ")t^" + to_string(it->first);
  }
  return out;
}

std::string to_json_text(const HahnVector& v) {
  std::string out = "[";
  bool first = true;
  for (const auto& [e, c] : v.terms()) {
    if (!first) out += ",";
    first = false;
    out += "{\"coefficient\":\"" + to_string(c) + "\",\"exponent\":\"" + to_string(e) + "\"}";
  }
  return out + "]";
}

std::optional<ExponentSet> ExponentSet::parse(const std::string& name) {
  if (name == "rationals" || name == "Q") return rationals();
  if (name == "integers" || name == "Z") return integers();
  return std::nullopt;
}

std::string ExponentSet::name() const { return kind == Kind::Rationals ? "rationals" : "integers"; }

bool ExponentSet::contains(const Rational& q) const {
  return kind == Kind::Rationals || q.get_den() == 1;
}

std::optional<Rational> ExponentSet::between(const Rational& lo, const Rational& hi) const {
  if (lo >= hi) return std::nullopt;
  if (kind == Kind::Rationals) return simplest_between(lo, hi);
  const Integer k = floor(lo) + 1;
  if (k < hi) return Rational(k);
  return std::nullopt;
}

std::optional<Rational> ExponentSet::above(const Rational& q) const {
  return kind == Kind::Rationals ? Rational(q + 1) : Rational(floor(q) + 1);
}

std::optional<Rational> ExponentSet::below(const Rational& q) const {
  return kind == Kind::Rationals ? Rational(q - 1) : Rational(ceil(q) - 1);
}

namespace {

Rational sample_exponent(const ExponentSet& set, std::mt19937_64& rng) {
  if (set.kind == ExponentSet::Kind::Integers) return Rational(static_cast<long>(rng() % 13) - 6);
  const long den = static_cast<long>(rng() % 8) + 1;
  const long num = static_cast<long>(rng() % 81) - 40;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational sample_coefficient(std::mt19937_64& rng) {
  const long den = static_cast<long>(rng() % 12) + 1;
  const long num = static_cast<long>(rng() % 2001) - 1000;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Class of g strictly below class of h, checked through the order at a large multiple.
bool class_below(const HahnVector& g, const HahnVector& h) {
  if (compare_classes(g, h) >= 0) return false;
  const HahnVector big = abs(g).scaled(Rational(Integer(1) << 20));
  return compare(big, abs(h)) < 0 && !arch_equiv(g, h).equivalent;
}

HahnVector unit(const Rational& e) { return HahnVector::monomial(e, Rational(1)); }

}  // namespace

HrReport harnik_ressayre_check(const ExponentSet& exponents, const HrOptions& options) {
  HrReport report;
  std::mt19937_64 rng(options.seed);
  std::optional<Rational> lowest, highest;

  for (std::size_t i = 0; i < options.pairs; ++i) {
    Rational a = sample_exponent(exponents, rng);
    Rational b = sample_exponent(exponents, rng);
    while (a == b) b = sample_exponent(exponents, rng);
    if (a > b) std::swap(a, b);
    ++report.pairs_checked;
    for (const Rational& e : {a, b}) {
      if (!lowest || e < *lowest) lowest = e;
      if (!highest || e > *highest) highest = e;
    }
    const auto mid = exponents.between(a, b);
    if (!mid || !class_below(unit(a), unit(*mid)) || !class_below(unit(*mid), unit(b))) {
      report.passed = false;
      if (!report.density_failure) report.density_failure = std::make_pair(a, b);
      if (!report.failure) report.failure = "no class strictly between t^" + to_string(a) + " and t^" + to_string(b);
      continue;
    }
    report.density.push_back({a, *mid, b});
  }

  if (lowest) {
    const auto lo = exponents.below(*lowest);
    const auto hi = exponents.above(*highest);
    if (lo && hi && class_below(unit(*lo), unit(*lowest)) && class_below(unit(*highest), unit(*hi))) {
      report.endpoint_witness = std::make_pair(*lo, *hi);
    } else {
      report.passed = false;
      if (!report.failure) report.failure = "sampled classes have an endpoint";
    }
  }

  if (options.triples > 0) {
    const Rational gamma = sample_exponent(exponents, rng);
    report.embedding_class = gamma;
    const HahnVector base = unit(gamma);
    auto embed = [&](const Rational& c) { return HahnVector::monomial(gamma, c); };
    for (std::size_t i = 0; i < options.triples; ++i) {
      const Rational x = sample_coefficient(rng), y = sample_coefficient(rng), z = sample_coefficient(rng);
      ++report.triples_checked;
      bool ok = embed(x) + embed(y) == embed(x + y);
      ok = ok && (embed(x) + embed(y)) + embed(z) == embed(x) + (embed(y) + embed(z));
      ok = ok && compare(embed(x), embed(y)) == sgn(Rational(x - y));
      ok = ok && compare(embed(x) + embed(z), embed(y) + embed(z)) == sgn(Rational(x - y));
      for (const Rational& c : {x, y, z}) {
        if (c != 0) ok = ok && arch_equiv(embed(c), base).equivalent;
      }
      if (!ok) {
        report.passed = false;
        if (!report.failure) {
          report.failure = "embedding check failed on (" + to_string(x) + ", " + to_string(y) + ", " + to_string(z) + ")";
        }
      }
    }
  }
  return report;
}

}  // namespace saturator

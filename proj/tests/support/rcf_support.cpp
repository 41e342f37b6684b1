// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include "rcf_support.hpp"

namespace saturator::testing {

UPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(1, 6), coeff(-9, 9), nz(1, 9);
  const int d = deg(rng);
  std::vector<Rational> cs;
  for (int i = 0; i < d; ++i) cs.emplace_back(coeff(rng));
  cs.emplace_back(nz(rng) * (rng() % 2 ? 1 : -1));
  return UPoly(std::move(cs));
}

int sampled_root_count(const UPoly& p) {
  const UPoly f = p.square_free();
  Integer den = 1;
  for (const auto& c : f.coeffs()) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> ints;
  for (const auto& c : f.coeffs()) ints.push_back(Integer(c * den));
  const int d = static_cast<int>(ints.size()) - 1;
  const long scale = 4096;
  std::vector<Integer> weight(ints.size());
  Integer w = 1;
  for (int i = d; i >= 0; --i) {
    weight[static_cast<std::size_t>(i)] = ints[static_cast<std::size_t>(i)] * w;
    w *= scale;
  }
  int changes = 0, last = 0;
  Integer acc;
  for (long k = -10 * scale; k <= 10 * scale; ++k) {
    // sum c_i k^i scale^(d - i), Horner in k.
    acc = 0;
    for (int i = d; i >= 0; --i) acc = acc * k + weight[static_cast<std::size_t>(i)];
    const int s = sgn(acc);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

namespace {

Term power(const Term& x, int e) {
  Term t = x;
  for (int i = 1; i < e; ++i) t = Term::mul(t, x);
  return t;
}

}  // namespace

std::vector<RcfCase> rcf_corpus() {
  std::mt19937_64 rng(20261016);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::vector<RealAlgebraic> values{
      RealAlgebraic::sqrt(2), RealAlgebraic(UPoly(std::vector<Rational>{-2, 0, 0, 1}), 1, 2), Rational(1, 3),
      -RealAlgebraic::sqrt(3)};
  const Term v = Term::var("v"), c = Term::var("c");
  std::vector<RcfCase> out;
  for (int i = 0; i < 50; ++i) {
    const bool with_c = i % 5 != 0;
    auto atom = [&] {
      Term t = Term::constant(pick(-3, 3));
      const int d = pick(1, 3);
      for (int e = 1; e <= d; ++e) {
        const int k = pick(-3, 3);
        if (k != 0 || e == d) t = Term::add(t, Term::mul(Term::constant(k == 0 ? 1 : k), power(v, e)));
      }
      if (with_c) {
        const int e = pick(0, 2);
        t = Term::sub(t, e == 0 ? c : Term::mul(c, power(v, e)));
      }
      return pick(0, 4) == 0 ? Formula::eq(t, Term::constant(0)) : Formula::lt(t, Term::constant(0));
    };
    Formula f = atom();
    const int extra = pick(0, 2);
    for (int j = 0; j < extra; ++j) {
      Formula g = pick(0, 3) == 0 ? Formula::negation(atom()) : atom();
      f = pick(0, 1) ? Formula::conjunction(f, g) : Formula::disjunction(f, g);
    }
    RcfCase rc{f, {}};
    if (with_c) rc.params.emplace("c", values[static_cast<std::size_t>(i) % values.size()]);
    out.push_back(std::move(rc));
  }
  return out;
}

std::vector<Rational> rational_samples(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> out;
  while (out.size() < 1000) {
    const long q = static_cast<long>(rng() % 32) + 1;
    const long p = static_cast<long>(rng() % static_cast<unsigned long>(12 * q + 1)) - 6 * q;
    Rational r(p, q);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

}  // namespace saturator::testing

// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include "saturator/numeric.hpp"

#include <cctype>

#include "saturator/errors.hpp"

namespace saturator {

namespace {

bool valid_integer_text(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!valid_integer_text(text)) throw DomainError("malformed integer '" + std::string(text) + "'");
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Integer mod(const Integer& a, const Integer& n) {
  Integer m = abs(n);
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }
Integer ceil(const Rational& q) { return ceil_div(q.get_num(), q.get_den()); }

Integer zigzag(const Integer& z) {
  if (z >= 0) return Integer(2 * z);
  return Integer(-2 * z - 1);
}

Integer unzigzag(const Integer& n) {
  if (n < 0) throw DecodeError("negative code component");
  if (mpz_even_p(n.get_mpz_t())) return Integer(n / 2);
  return Integer(-(n + 1) / 2);
}

Integer pair(const Integer& x, const Integer& y) {
  Integer s = x + y;
  return Integer(s * (s + 1) / 2 + y);
}

std::pair<Integer, Integer> unpair(const Integer& z) {
  if (z < 0) throw DecodeError("negative code");
  Integer disc = 8 * z + 1;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
  Integer w = (root - 1) / 2;
  Integer t = w * (w + 1) / 2;
  Integer y = z - t;
  Integer x = w - y;
  return {x, y};
}

Integer mod_inverse(const Integer& a, const Integer& n) {
  Integer inv;
  Integer m = abs(n);
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    if (m == 1) return Integer(0);
    throw DomainError("no modular inverse");
  }
  return inv;
}

Rational simplest_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (lo && hi && *lo >= *hi) throw DomainError("empty interval");
  if (!lo && !hi) return 0;
  if (!lo) return *hi > 0 ? Rational(0) : Rational(ceil(*hi) - 1);
  if (!hi) return *lo < 0 ? Rational(0) : Rational(floor(*lo) + 1);
  if (*lo < 0 && *hi > 0) return 0;
  if (*hi <= 0) return -simplest_between(Rational(-*hi), Rational(-*lo));
  const Integer fl = floor(*lo);
  if (fl + 1 < *hi) return Rational(fl + 1);
  // lo and hi share the unit interval [fl, fl + 1].
  const std::optional<Rational> upper =
      *lo == fl ? std::nullopt : std::optional<Rational>(Rational(1) / (*lo - fl));
  Rational r = Rational(fl) + Rational(1) / simplest_between(Rational(1) / (*hi - fl), upper);
  r.canonicalize();
  return r;
}

}  // namespace saturator

// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>

#include "saturator/errors.hpp"
#include "saturator/rcf.hpp"

namespace saturator {

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UPoly UPoly::constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }

UPoly UPoly::x() { return UPoly(std::vector<Rational>{0, 1}); }

UPoly UPoly::parse(std::string_view text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '[') throw ParseError("expected '['", i);
  ++i;
  std::vector<Rational> cs;
  skip();
  if (i < text.size() && text[i] == ']') {
    ++i;
  } else {
    while (true) {
      skip();
      const std::size_t start = i;
      while (i < text.size() && text[i] != ',' && text[i] != ']' && !std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      try {
        cs.push_back(parse_rational(text.substr(start, i - start)));
      } catch (const Error&) {
        throw ParseError("invalid coefficient", start);
      }
      skip();
      if (i >= text.size()) throw ParseError("unterminated coefficient list", i);
      if (text[i] == ']') {
        ++i;
        break;
      }
      if (text[i] != ',') throw ParseError("expected ',' or ']'", i);
      ++i;
    }
  }
  skip();
  if (i != text.size()) throw ParseError("trailing input after polynomial", i);
  return UPoly(std::move(cs));
}

const Rational& UPoly::lead() const {
  if (coeffs_.empty()) throw DomainError("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int UPoly::sign_at_infinity(int direction) const {
  if (coeffs_.empty()) return 0;
  const int s = sgn(coeffs_.back());
  return (direction < 0 && degree() % 2 == 1) ? -s : s;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (coeffs_.empty()) return *this;
  return scaled(1 / coeffs_.back());
}

UPoly UPoly::scaled(const Rational& k) const {
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c *= k;
  return UPoly(std::move(out));
}

UPoly UPoly::reflected() const {
  std::vector<Rational> out = coeffs_;
  for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
  return UPoly(std::move(out));
}

UPoly UPoly::reversed() const {
  std::vector<Rational> out(coeffs_.rbegin(), coeffs_.rend());
  return UPoly(std::move(out));
}

UPoly UPoly::square_free() const {
  if (degree() <= 0) return monic();
  const UPoly g = gcd(*this, derivative());
  return divmod(*this, g).first.monic();
}

Rational UPoly::root_bound() const {
  Rational m = 0;
  for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) {
    Rational r = coeffs_[i] / coeffs_.back();
    if (r < 0) r = -r;
    if (r > m) m = r;
  }
  return m + 1;
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Rational> out(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + o.coeff(i);
  return UPoly(std::move(out));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly();
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return UPoly(std::move(out));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> rem = a.coeffs_;
  std::vector<Rational> quot(a.coeffs_.size() - b.coeffs_.size() + 1);
  const Rational& lb = b.coeffs_.back();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational c = rem[k + b.coeffs_.size() - 1] / lb;
    quot[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) rem[k + j] -= c * b.coeffs_[j];
  }
  rem.resize(b.coeffs_.size() - 1);
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly UPoly::gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::string UPoly::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const bool unit = mag == 1 && k > 0;
    if (!unit) out += saturator::to_string(mag);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

std::string UPoly::to_list_text() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ", ";
    out += saturator::to_string(coeffs_[i]);
  }
  return out + "]";
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  UPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    UPoly r = UPoly::divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern; monic-ing the magnitude bounds growth.
    seq.push_back(-(r.scaled(1 / (r.lead() < 0 ? Rational(-r.lead()) : r.lead()))));
  }
  return seq;
}

namespace {

int count_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int sign_variations(const std::vector<UPoly>& seq, const Rational& x) {
  std::vector<int> signs;
  for (const auto& p : seq) signs.push_back(p.sign_at(x));
  return count_changes(signs);
}

int sign_variations_at_infinity(const std::vector<UPoly>& seq, int direction) {
  std::vector<int> signs;
  for (const auto& p : seq) signs.push_back(p.sign_at_infinity(direction));
  return count_changes(signs);
}

int sturm_count(const std::vector<UPoly>& seq, const Rational& a, const Rational& b) {
  if (seq.empty()) return 0;
  return sign_variations(seq, a) - sign_variations(seq, b);
}

int sturm_count(const std::vector<UPoly>& seq) {
  if (seq.empty()) return 0;
  return sign_variations_at_infinity(seq, -1) - sign_variations_at_infinity(seq, 1);
}

std::vector<RealAlgebraic> sturm_isolate(const UPoly& p) {
  if (p.is_zero()) throw DomainError("sturm_isolate of the zero polynomial");
  const UPoly f = p.square_free();
  std::vector<RealAlgebraic> roots;
  if (f.degree() < 1) return roots;
  const auto seq = sturm_sequence(f);
  const Rational bound = f.root_bound();
  struct Range {
    Rational lo, hi;
    int count;
  };
  std::vector<Range> stack{{-bound, bound, sturm_count(seq, -bound, bound)}};
  while (!stack.empty()) {
    Range r = stack.back();
    stack.pop_back();
    if (r.count == 0) continue;
    if (r.count == 1) {
      roots.emplace_back(f, r.lo, r.hi);
      continue;
    }
    Rational mid = (r.lo + r.hi) / 2;
    // Split at a non-root so every isolating interval has non-root ends.
    for (int k = 3; f.sign_at(mid) == 0; ++k) mid = r.lo + (r.hi - r.lo) / k;
    const int left = sturm_count(seq, r.lo, mid);
    stack.push_back({mid, r.hi, r.count - left});
    stack.push_back({r.lo, mid, left});
  }
  std::sort(roots.begin(), roots.end(), [](const RealAlgebraic& a, const RealAlgebraic& b) { return a.hi() <= b.lo(); });
  return roots;
}

}  // namespace saturator

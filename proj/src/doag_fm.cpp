// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "saturator/doag.hpp"

namespace saturator {

namespace {

struct LinQ {
  std::map<std::string, Rational> coeffs;
  Rational constant = 0;

  Rational coeff(const std::string& v) const {
    auto it = coeffs.find(v);
    return it == coeffs.end() ? Rational(0) : it->second;
  }
  void add(const LinQ& o, const Rational& k) {
    for (const auto& [v, c] : o.coeffs) {
      Rational& slot = coeffs[v];
      slot += c * k;
      if (slot == 0) coeffs.erase(v);
    }
    constant += o.constant * k;
  }
  LinQ scaled(const Rational& k) const {
    LinQ r;
    r.add(*this, k);
    return r;
  }
  bool operator<(const LinQ& o) const {
    if (coeffs != o.coeffs) return coeffs < o.coeffs;
    return constant < o.constant;
  }
  bool operator==(const LinQ& o) const { return coeffs == o.coeffs && constant == o.constant; }
};

LinQ linearize(const Term& t) {
  LinQ r;
  switch (t.kind()) {
    case Term::Kind::Var:
      r.coeffs[t.name()] = 1;
      return r;
    case Term::Kind::Const:
      r.constant = t.value();
      return r;
    case Term::Kind::Add:
      r = linearize(t.lhs());
      r.add(linearize(t.rhs()), 1);
      return r;
    case Term::Kind::Sub:
      r = linearize(t.lhs());
      r.add(linearize(t.rhs()), -1);
      return r;
    case Term::Kind::Neg:
      return linearize(t.lhs()).scaled(-1);
    case Term::Kind::Scale:
      return linearize(t.lhs()).scaled(Rational(t.value()));
    case Term::Kind::Mul: {
      LinQ a = linearize(t.lhs()), b = linearize(t.rhs());
      if (a.coeffs.empty()) return b.scaled(a.constant);
      if (b.coeffs.empty()) return a.scaled(b.constant);
      throw Unsupported("non-linear product in " + to_string(t));
    }
  }
  return r;
}

// t op 0.
struct Lit {
  enum Op { Lt, Le, Eq, Ne } op;
  LinQ t;

  Lit negated() const {
    switch (op) {
      case Lt: return {Le, t.scaled(-1)};
      case Le: return {Lt, t.scaled(-1)};
      case Eq: return {Ne, t};
      case Ne: return {Eq, t};
    }
    return *this;
  }
  bool ground_value() const {
    const int s = sgn(t.constant);
    switch (op) {
      case Lt: return s < 0;
      case Le: return s <= 0;
      case Eq: return s == 0;
      case Ne: return s != 0;
    }
    return false;
  }
  // Scale so the first coefficient has absolute value 1 (sign kept for < and <=).
  Lit normalized() const {
    if (t.coeffs.empty()) return *this;
    Rational k = 1 / t.coeffs.begin()->second;
    if (op == Eq || op == Ne) return {op, t.scaled(k)};
    return {op, t.scaled(::abs(k))};
  }
  bool operator<(const Lit& o) const {
    if (op != o.op) return op < o.op;
    return t < o.t;
  }
  bool operator==(const Lit& o) const { return op == o.op && t == o.t; }
};

using Conj = std::vector<Lit>;
using Dnf = std::vector<Conj>;

// Drops true ground literals; nullopt when the conjunct is false.
std::optional<Conj> simplify(const Conj& c) {
  Conj out;
  for (const auto& l : c) {
    if (l.t.coeffs.empty()) {
      if (!l.ground_value()) return std::nullopt;
      continue;
    }
    out.push_back(l.normalized());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void push(Dnf& d, const Conj& c) {
  if (auto s = simplify(c)) {
    if (std::find(d.begin(), d.end(), *s) == d.end()) d.push_back(std::move(*s));
  }
}

Dnf conjoin(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Conj c = x;
      c.insert(c.end(), y.begin(), y.end());
      push(out, c);
    }
  }
  return out;
}

Dnf negate(const Dnf& d) {
  Dnf acc{Conj{}};
  for (const auto& c : d) {
    Dnf alt;
    for (const auto& l : c) push(alt, Conj{l.negated()});
    acc = conjoin(acc, alt);
    if (acc.empty()) break;
  }
  return acc;
}

LinQ substitute(const LinQ& t, const std::string& x, const LinQ& value) {
  const Rational c = t.coeff(x);
  if (c == 0) return t;
  LinQ r = t;
  r.coeffs.erase(x);
  r.add(value, c);
  return r;
}

Dnf eliminate_conj(const std::string& x, const Conj& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Rational a = c[i].t.coeff(x);
    if (c[i].op != Lit::Eq || a == 0) continue;
    LinQ rest = c[i].t;
    rest.coeffs.erase(x);
    const LinQ value = rest.scaled(-1 / a);
    Conj out;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j != i) out.push_back({c[j].op, substitute(c[j].t, x, value)});
    }
    Dnf d;
    push(d, out);
    return d;
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].op != Lit::Ne || c[i].t.coeff(x) == 0) continue;
    Conj below = c, above = c;
    below[i] = {Lit::Lt, c[i].t};
    above[i] = {Lit::Lt, c[i].t.scaled(-1)};
    Dnf d = eliminate_conj(x, below);
    for (const auto& e : eliminate_conj(x, above)) push(d, e);
    return d;
  }
  // Bounds: x < u (or <=) and l < x (or <=), written as value terms for x.
  struct Bound {
    LinQ value;
    bool strict;
  };
  std::vector<Bound> lower, upper;
  Conj out;
  for (const auto& l : c) {
    const Rational a = l.t.coeff(x);
    if (a == 0) {
      out.push_back(l);
      continue;
    }
    LinQ rest = l.t;
    rest.coeffs.erase(x);
    const Bound b{rest.scaled(-1 / a), l.op == Lit::Lt};
    (a > 0 ? upper : lower).push_back(b);
  }
  for (const auto& lo : lower) {
    for (const auto& up : upper) {
      LinQ diff = lo.value;
      diff.add(up.value, -1);
      out.push_back({lo.strict || up.strict ? Lit::Lt : Lit::Le, diff});
    }
  }
  Dnf d;
  push(d, out);
  return d;
}

Dnf eliminate(const std::string& x, const Dnf& d) {
  Dnf out;
  for (const auto& c : d) {
    for (const auto& e : eliminate_conj(x, c)) push(out, e);
  }
  return out;
}

Dnf build(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Formula::Kind::Lt:
    case Formula::Kind::Eq: {
      LinQ t = linearize(f.lhs_term());
      t.add(linearize(f.rhs_term()), -1);
      Lit l{f.kind() == Formula::Kind::Lt ? Lit::Lt : Lit::Eq, t};
      Dnf d;
      push(d, Conj{positive ? l : l.negated()});
      return d;
    }
    case Formula::Kind::Divides:
      throw SignatureError("divisibility predicates are not part of the ordered-group language");
    case Formula::Kind::Not:
      return build(f.operand(), !positive);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      const bool left_positive = f.kind() == Formula::Kind::Implies ? !positive : positive;
      Dnf a = build(f.left(), left_positive);
      Dnf b = build(f.right(), positive);
      const bool conj = (f.kind() == Formula::Kind::And) == positive;
      if (conj) return conjoin(a, b);
      for (const auto& c : b) push(a, c);
      return a;
    }
    case Formula::Kind::Exists: {
      Dnf inner = eliminate(f.bound_var(), build(f.body(), true));
      return positive ? inner : negate(inner);
    }
    case Formula::Kind::Forall: {
      Dnf inner = eliminate(f.bound_var(), build(f.body(), false));
      return positive ? negate(inner) : inner;
    }
  }
  return {};
}

}  // namespace

bool decide_linear_sentence(const Formula& sentence) {
  if (!sentence.free_vars().empty()) throw DomainError("not a sentence: free variable " + sentence.free_vars()[0]);
  Dnf d = build(sentence, true);
  for (const auto& c : d) {
    if (c.empty()) return true;
  }
  return false;
}

}  // namespace saturator

// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <functional>
#include <limits>
#include <unordered_map>

#include "saturator/errors.hpp"
#include "saturator/presburger.hpp"

namespace saturator {

// ---------------------------------------------------------------------------
// LinearTerm

LinearTerm LinearTerm::variable(const std::string& name, Integer coeff) {
  LinearTerm t;
  t.set_coeff(name, coeff);
  return t;
}

LinearTerm LinearTerm::from_term(const Term& term) {
  switch (term.kind()) {
    case Term::Kind::Var:
      return variable(term.name());
    case Term::Kind::Const:
      return LinearTerm(term.value());
    case Term::Kind::Add:
      return from_term(term.lhs()) + from_term(term.rhs());
    case Term::Kind::Sub:
      return from_term(term.lhs()) - from_term(term.rhs());
    case Term::Kind::Neg:
      return -from_term(term.lhs());
    case Term::Kind::Scale:
      return from_term(term.lhs()) * term.value();
    case Term::Kind::Mul: {
      LinearTerm l = from_term(term.lhs());
      LinearTerm r = from_term(term.rhs());
      if (l.is_constant()) return r * l.constant();
      if (r.is_constant()) return l * r.constant();
      throw SignatureError("non-linear product " + to_string(term));
    }
  }
  return {};
}

Integer LinearTerm::coeff(const std::string& var) const {
  auto it = coeffs_.find(var);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

Integer LinearTerm::content() const {
  Integer g = 0;
  for (const auto& [v, c] : coeffs_) g = gcd(g, c);
  return g;
}

void LinearTerm::set_coeff(const std::string& var, const Integer& c) {
  if (c == 0) {
    coeffs_.erase(var);
  } else {
    coeffs_[var] = c;
  }
}

LinearTerm LinearTerm::operator+(const LinearTerm& o) const {
  LinearTerm r = *this;
  for (const auto& [v, c] : o.coeffs_) r.set_coeff(v, r.coeff(v) + c);
  r.constant_ += o.constant_;
  return r;
}

LinearTerm LinearTerm::operator-(const LinearTerm& o) const { return *this + (-o); }

LinearTerm LinearTerm::operator-() const {
  LinearTerm r = *this;
  for (auto& [v, c] : r.coeffs_) c = -c;
  r.constant_ = -r.constant_;
  return r;
}

LinearTerm LinearTerm::operator*(const Integer& k) const {
  if (k == 0) return LinearTerm(0);
  LinearTerm r = *this;
  for (auto& [v, c] : r.coeffs_) c *= k;
  r.constant_ *= k;
  return r;
}

LinearTerm LinearTerm::plus(const Integer& k) const {
  LinearTerm r = *this;
  r.constant_ += k;
  return r;
}

LinearTerm LinearTerm::without(const std::string& var) const {
  LinearTerm r = *this;
  r.coeffs_.erase(var);
  return r;
}

LinearTerm LinearTerm::substitute(const std::string& var, const LinearTerm& value) const {
  auto it = coeffs_.find(var);
  if (it == coeffs_.end()) return *this;
  const Integer c = it->second;
  return without(var) + value * c;
}

Integer LinearTerm::eval(const Assignment& values) const {
  Integer s = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = values.find(v);
    if (it == values.end()) throw DomainError("unassigned variable '" + v + "'");
    s += c * it->second;
  }
  return s;
}

Term LinearTerm::to_term() const {
  std::optional<Term> acc;
  for (const auto& [v, c] : coeffs_) {
    const Integer mag = abs(c);
    Term atom = mag == 1 ? Term::var(v) : Term::scale(mag, Term::var(v));
    if (!acc) {
      acc = c < 0 ? (mag == 1 ? Term::neg(atom) : Term::scale(c, Term::var(v))) : atom;
    } else {
      acc = c < 0 ? Term::sub(*acc, atom) : Term::add(*acc, atom);
    }
  }
  if (!acc) return Term::constant(constant_);
  if (constant_ > 0) return Term::add(*acc, Term::constant(constant_));
  if (constant_ < 0) return Term::sub(*acc, Term::constant(-constant_));
  return *acc;
}

bool operator<(const LinearTerm& a, const LinearTerm& b) {
  if (a.coeffs_ != b.coeffs_) return a.coeffs_ < b.coeffs_;
  return a.constant_ < b.constant_;
}

// ---------------------------------------------------------------------------
// Literals

Literal Literal::negated() const {
  switch (kind) {
    case Kind::Pos:
      return {Kind::Pos, (-term).plus(1), 0};
    case Kind::Eq:
      return {Kind::Neq, term, 0};
    case Kind::Neq:
      return {Kind::Eq, term, 0};
    case Kind::Div:
      return {Kind::NDiv, term, modulus};
    case Kind::NDiv:
      return {Kind::Div, term, modulus};
  }
  return *this;
}

bool Literal::eval(const Assignment& values) const {
  const Integer v = term.eval(values);
  switch (kind) {
    case Kind::Pos:
      return v > 0;
    case Kind::Eq:
      return v == 0;
    case Kind::Neq:
      return v != 0;
    case Kind::Div:
      return mod(v, modulus) == 0;
    case Kind::NDiv:
      return mod(v, modulus) != 0;
  }
  return false;
}

namespace {

// Splits t = P - N + k into the two sides "N + k- " and "P + k+".
std::pair<Term, Term> sides(const LinearTerm& t) {
  LinearTerm left, right;
  for (const auto& [v, c] : t.coeffs()) {
    if (c > 0) {
      right.set_coeff(v, c);
    } else {
      left.set_coeff(v, -c);
    }
  }
  if (t.constant() > 0) right = right.plus(t.constant());
  if (t.constant() < 0) left = left.plus(-t.constant());
  return {left.to_term(), right.to_term()};
}

}  // namespace

Formula Literal::to_formula() const {
  switch (kind) {
    case Kind::Pos: {
      auto [l, r] = sides(term);
      return Formula::lt(l, r);
    }
    case Kind::Eq:
    case Kind::Neq: {
      auto [l, r] = sides(term);
      Formula f = Formula::eq(l, r);
      return kind == Kind::Eq ? f : Formula::negation(f);
    }
    case Kind::Div:
    case Kind::NDiv: {
      Formula f = Formula::divides(modulus, term.to_term());
      return kind == Kind::Div ? f : Formula::negation(f);
    }
  }
  return Formula::truth();
}

bool operator<(const Literal& a, const Literal& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.modulus != b.modulus) return a.modulus < b.modulus;
  return a.term < b.term;
}

namespace {

// Symmetric residue in (-n/2, n/2].
Integer symmetric_mod(const Integer& a, const Integer& n) {
  Integer r = mod(a, n);
  if (2 * r > n) r -= n;
  return r;
}

LinearTerm divide_exact(const LinearTerm& t, const Integer& g) {
  LinearTerm r(t.constant() / g);
  for (const auto& [v, c] : t.coeffs()) r.set_coeff(v, c / g);
  return r;
}

LinearTerm reduce_mod(const LinearTerm& t, const Integer& n) {
  LinearTerm r(mod(t.constant(), n));
  for (const auto& [v, c] : t.coeffs()) r.set_coeff(v, symmetric_mod(c, n));
  return r;
}

}  // namespace

std::variant<bool, Literal> normalize(const Literal& lit) {
  using K = Literal::Kind;
  const LinearTerm& t = lit.term;
  switch (lit.kind) {
    case K::Pos: {
      if (t.is_constant()) return t.constant() > 0;
      const Integer g = t.content();
      if (g == 1) return lit;
      LinearTerm r;
      for (const auto& [v, c] : t.coeffs()) r.set_coeff(v, c / g);
      r = r.plus(ceil_div(t.constant(), g));
      return Literal{K::Pos, r, 0};
    }
    case K::Eq:
    case K::Neq: {
      const bool eq = lit.kind == K::Eq;
      if (t.is_constant()) return (t.constant() == 0) == eq;
      const Integer g = t.content();
      if (mod(t.constant(), g) != 0) return !eq;
      LinearTerm r = divide_exact(t, g);
      if (r.coeffs().begin()->second < 0) r = -r;
      return Literal{lit.kind, r, 0};
    }
    case K::Div:
    case K::NDiv: {
      const bool div = lit.kind == K::Div;
      if (lit.modulus < 1) throw DomainError("divisibility modulus must be positive");
      Integer n = lit.modulus;
      if (n == 1) return div;
      LinearTerm r = reduce_mod(t, n);
      if (r.is_constant()) return (r.constant() == 0) == div;
      const Integer h = gcd(n, r.content());
      if (mod(r.constant(), h) != 0) return !div;
      if (h > 1) {
        n /= h;
        r = divide_exact(r, h);
        if (n == 1) return div;
      }
      if (r.coeffs().begin()->second < 0) r = reduce_mod(-r, n);
      return Literal{lit.kind, r, n};
    }
  }
  return lit;
}

// ---------------------------------------------------------------------------
// Qff

struct Qff::Node {
  Kind kind;
  std::optional<Literal> lit;
  std::vector<Qff> kids;
  std::size_t hash = 0;
  std::size_t literals = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t hash_integer(const Integer& z) {
  std::size_t h = static_cast<std::size_t>(mpz_size(z.get_mpz_t()));
  if (mpz_size(z.get_mpz_t()) > 0) h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0)));
  return mix(h, static_cast<std::size_t>(sgn(z) + 1));
}

std::size_t hash_literal(const Literal& lit) {
  std::size_t h = mix(static_cast<std::size_t>(lit.kind), hash_integer(lit.modulus));
  for (const auto& [v, c] : lit.term.coeffs()) h = mix(mix(h, std::hash<std::string>{}(v)), hash_integer(c));
  return mix(h, hash_integer(lit.term.constant()));
}

}  // namespace

Qff Qff::truth() {
  static const Qff t(std::make_shared<const Node>(Node{Kind::True, std::nullopt, {}, 1, 0}));
  return t;
}

Qff Qff::falsity() {
  static const Qff f(std::make_shared<const Node>(Node{Kind::False, std::nullopt, {}, 2, 0}));
  return f;
}

Qff Qff::literal(const Literal& lit) {
  auto n = normalize(lit);
  if (std::holds_alternative<bool>(n)) return std::get<bool>(n) ? truth() : falsity();
  const Literal& l = std::get<Literal>(n);
  return Qff(std::make_shared<const Node>(Node{Kind::Lit, l, {}, hash_literal(l), 1}));
}

namespace {

using Coeffs = std::map<std::string, Integer>;

Coeffs negate_coeffs(const Coeffs& c) {
  Coeffs r = c;
  for (auto& [v, k] : r) k = -k;
  return r;
}

}  // namespace

// Flattens, folds constants, drops duplicates and performs cheap literal reasoning.
// `conj` selects conjunction (true) or disjunction (false).
Qff Qff::junction(std::vector<Qff> parts, bool conj) {
  using K = Kind;
  const K unit = conj ? K::True : K::False;
  const K zero = conj ? K::False : K::True;
  const K self = conj ? K::And : K::Or;

  std::vector<Qff> flat;
  flat.reserve(parts.size());
  std::function<bool(const Qff&)> add = [&](const Qff& q) {
    if (q.kind() == zero) return false;
    if (q.kind() == unit) return true;
    if (q.kind() == self) {
      for (const auto& k : q.children()) {
        if (!add(k)) return false;
      }
      return true;
    }
    flat.push_back(q);
    return true;
  };
  for (const auto& p : parts) {
    if (!add(p)) return conj ? Qff::falsity() : Qff::truth();
  }

  // Pos literals sharing their variable part keep only the strongest (conj) or weakest bound.
  std::map<Coeffs, std::size_t> pos_index;
  std::vector<bool> dead(flat.size(), false);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i].kind() != K::Lit || flat[i].lit().kind != Literal::Kind::Pos) continue;
    const auto& c = flat[i].lit().term.coeffs();
    auto it = pos_index.find(c);
    if (it == pos_index.end()) {
      pos_index.emplace(c, i);
      continue;
    }
    const Integer& k_old = flat[it->second].lit().term.constant();
    const Integer& k_new = flat[i].lit().term.constant();
    const bool replace = conj ? k_new < k_old : k_new > k_old;
    if (replace) {
      dead[it->second] = true;
      it->second = i;
    } else {
      dead[i] = true;
    }
  }
  // s + k1 > 0 and -s + k2 > 0.
  for (const auto& [c, i] : pos_index) {
    auto it = pos_index.find(negate_coeffs(c));
    if (it == pos_index.end() || it->second < i) continue;
    const Integer sum = flat[i].lit().term.constant() + flat[it->second].lit().term.constant();
    if (conj && sum < 2) return Qff::falsity();
    if (!conj && sum >= 1) return Qff::truth();
  }

  std::unordered_multimap<std::size_t, std::size_t> seen;
  std::vector<Qff> out;
  out.reserve(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (dead[i]) continue;
    const Qff& q = flat[i];
    bool dup = false;
    auto range = seen.equal_range(q.hash());
    for (auto it = range.first; it != range.second; ++it) {
      if (out[it->second] == q) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    if (q.kind() == K::Lit) {
      auto neg = normalize(q.lit().negated());
      if (std::holds_alternative<Literal>(neg)) {
        const Literal& nl = std::get<Literal>(neg);
        auto r2 = seen.equal_range(hash_literal(nl));
        for (auto it = r2.first; it != r2.second; ++it) {
          const Qff& o = out[it->second];
          if (o.kind() == K::Lit && o.lit() == nl) return conj ? Qff::falsity() : Qff::truth();
        }
      }
    }
    seen.emplace(q.hash(), out.size());
    out.push_back(q);
  }
  if (out.empty()) return conj ? Qff::truth() : Qff::falsity();
  if (out.size() == 1) return out.front();
  std::size_t h = conj ? 3 : 4;
  std::size_t lits = 0;
  for (const auto& q : out) {
    h = mix(h, q.hash());
    lits += q.literal_count();
  }
  return make(self, std::move(out), h, lits);
}

Qff Qff::make(Kind kind, std::vector<Qff> kids, std::size_t h, std::size_t lits) {
  return Qff(std::make_shared<const Node>(Node{kind, std::nullopt, std::move(kids), h, lits}));
}

Qff Qff::conjunction(std::vector<Qff> parts) { return junction(std::move(parts), true); }
Qff Qff::disjunction(std::vector<Qff> parts) { return junction(std::move(parts), false); }

Qff::Kind Qff::kind() const { return node_->kind; }
const Literal& Qff::lit() const { return *node_->lit; }
const std::vector<Qff>& Qff::children() const { return node_->kids; }
std::size_t Qff::literal_count() const { return node_->literals; }
std::size_t Qff::hash() const { return node_->hash; }

bool operator==(const Qff& a, const Qff& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  if (a.node_->kind == Qff::Kind::Lit) return *a.node_->lit == *b.node_->lit;
  if (a.node_->kids.size() != b.node_->kids.size()) return false;
  for (std::size_t i = 0; i < a.node_->kids.size(); ++i) {
    if (a.node_->kids[i] != b.node_->kids[i]) return false;
  }
  return true;
}

Qff Qff::negated() const {
  switch (kind()) {
    case Kind::True:
      return falsity();
    case Kind::False:
      return truth();
    case Kind::Lit:
      return literal(lit().negated());
    case Kind::And:
    case Kind::Or: {
      std::vector<Qff> parts;
      parts.reserve(children().size());
      for (const auto& k : children()) parts.push_back(k.negated());
      return kind() == Kind::And ? disjunction(std::move(parts)) : conjunction(std::move(parts));
    }
  }
  return *this;
}

Qff Qff::substitute(const std::string& var, const LinearTerm& value) const {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      return *this;
    case Kind::Lit: {
      if (!lit().term.has(var)) return *this;
      Literal l = lit();
      l.term = l.term.substitute(var, value);
      return literal(l);
    }
    case Kind::And:
    case Kind::Or: {
      std::vector<Qff> parts;
      parts.reserve(children().size());
      for (const auto& k : children()) parts.push_back(k.substitute(var, value));
      return kind() == Kind::And ? conjunction(std::move(parts)) : disjunction(std::move(parts));
    }
  }
  return *this;
}

bool Qff::eval(const Assignment& values) const {
  switch (kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Lit:
      return lit().eval(values);
    case Kind::And:
      return std::all_of(children().begin(), children().end(), [&](const Qff& q) { return q.eval(values); });
    case Kind::Or:
      return std::any_of(children().begin(), children().end(), [&](const Qff& q) { return q.eval(values); });
  }
  return false;
}

void Qff::collect_vars(std::set<std::string>& out) const {
  if (kind() == Kind::Lit) {
    for (const auto& [v, c] : lit().term.coeffs()) out.insert(v);
  }
  for (const auto& k : children()) k.collect_vars(out);
}

void Qff::collect_literals(std::vector<Literal>& out) const {
  if (kind() == Kind::Lit) out.push_back(lit());
  for (const auto& k : children()) k.collect_literals(out);
}

std::optional<std::vector<std::vector<Literal>>> Qff::dnf(std::size_t cap) const {
  using Dnf = std::vector<std::vector<Literal>>;
  switch (kind()) {
    case Kind::True:
      return Dnf{{}};
    case Kind::False:
      return Dnf{};
    case Kind::Lit:
      return Dnf{{lit()}};
    case Kind::Or: {
      Dnf out;
      for (const auto& k : children()) {
        auto d = k.dnf(cap);
        if (!d || out.size() + d->size() > cap) return std::nullopt;
        out.insert(out.end(), d->begin(), d->end());
      }
      return out;
    }
    case Kind::And: {
      Dnf out{{}};
      for (const auto& k : children()) {
        auto d = k.dnf(cap);
        if (!d || out.size() * d->size() > cap) return std::nullopt;
        Dnf next;
        next.reserve(out.size() * d->size());
        for (const auto& a : out) {
          for (const auto& b : *d) {
            std::vector<Literal> c = a;
            c.insert(c.end(), b.begin(), b.end());
            next.push_back(std::move(c));
          }
        }
        out = std::move(next);
      }
      return out;
    }
  }
  return std::nullopt;
}

Formula Qff::to_formula() const {
  switch (kind()) {
    case Kind::True:
      return Formula::truth();
    case Kind::False:
      return Formula::falsity();
    case Kind::Lit:
      return lit().to_formula();
    case Kind::And:
    case Kind::Or: {
      Formula acc = children().front().to_formula();
      for (std::size_t i = 1; i < children().size(); ++i) {
        Formula next = children()[i].to_formula();
        acc = kind() == Kind::And ? Formula::conjunction(acc, next) : Formula::disjunction(acc, next);
      }
      return acc;
    }
  }
  return Formula::truth();
}

namespace {

Qff nnf(const Formula& f, bool positive) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Lt: {
      Literal l{Literal::Kind::Pos, LinearTerm::from_term(f.rhs_term()) - LinearTerm::from_term(f.lhs_term()), 0};
      return Qff::literal(positive ? l : l.negated());
    }
    case K::Eq: {
      Literal l{Literal::Kind::Eq, LinearTerm::from_term(f.lhs_term()) - LinearTerm::from_term(f.rhs_term()), 0};
      return Qff::literal(positive ? l : l.negated());
    }
    case K::Divides: {
      Literal l{Literal::Kind::Div, LinearTerm::from_term(f.term()), f.modulus()};
      return Qff::literal(positive ? l : l.negated());
    }
    case K::Not:
      return nnf(f.operand(), !positive);
    case K::And:
    case K::Or: {
      std::vector<Qff> parts{nnf(f.left(), positive), nnf(f.right(), positive)};
      const bool conj = (f.kind() == K::And) == positive;
      return conj ? Qff::conjunction(std::move(parts)) : Qff::disjunction(std::move(parts));
    }
    case K::Implies: {
      std::vector<Qff> parts{nnf(f.left(), !positive), nnf(f.right(), positive)};
      return positive ? Qff::disjunction(std::move(parts)) : Qff::conjunction(std::move(parts));
    }
    case K::Exists:
    case K::Forall:
      throw Unsupported("quantifier in a quantifier-free context");
  }
  return Qff::truth();
}

}  // namespace

Qff Qff::from_formula(const Formula& f) { return nnf(f, true); }

// ---------------------------------------------------------------------------
// QffEvaluator

namespace {

bool fits_int64(const Integer& z) { return z.fits_slong_p(); }

}  // namespace

QffEvaluator::QffEvaluator(const Qff& qff, std::vector<std::string> vars) : vars_(std::move(vars)) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vars_.size(); ++i) index[vars_[i]] = i;
  const std::size_t stride = vars_.size() + 2;
  bool ok = true;
  std::function<std::uint32_t(const Qff&)> build = [&](const Qff& q) -> std::uint32_t {
    const auto idx = static_cast<std::uint32_t>(ops_.size());
    ops_.push_back({});
    switch (q.kind()) {
      case Qff::Kind::True:
        ops_[idx] = {0, 0, 0, 0};
        break;
      case Qff::Kind::False:
        ops_[idx] = {1, 0, 0, 0};
        break;
      case Qff::Kind::Lit: {
        const Literal& l = q.lit();
        const auto lit_index = static_cast<std::uint32_t>(coeffs_.size() / stride);
        coeffs_.resize(coeffs_.size() + stride, 0);
        std::int64_t* row = coeffs_.data() + lit_index * stride;
        for (const auto& [v, c] : l.term.coeffs()) {
          auto it = index.find(v);
          if (it == index.end()) throw DomainError("evaluator has no slot for variable '" + v + "'");
          if (!fits_int64(c)) ok = false;
          row[it->second] = ok ? c.get_si() : 0;
        }
        if (!fits_int64(l.term.constant()) || !fits_int64(l.modulus)) ok = false;
        if (ok) {
          row[vars_.size()] = l.term.constant().get_si();
          row[vars_.size() + 1] = l.modulus.get_si();
        }
        ops_[idx] = {2, static_cast<std::uint8_t>(l.kind), lit_index, 0};
        break;
      }
      case Qff::Kind::And:
      case Qff::Kind::Or: {
        std::vector<std::uint32_t> kids;
        for (const auto& k : q.children()) kids.push_back(build(k));
        const auto begin = static_cast<std::uint32_t>(child_slots_.size());
        child_slots_.insert(child_slots_.end(), kids.begin(), kids.end());
        ops_[idx] = {static_cast<std::uint8_t>(q.kind() == Qff::Kind::And ? 3 : 4), 0, begin,
                     static_cast<std::uint32_t>(kids.size())};
        break;
      }
    }
    return idx;
  };
  build(qff);
  // Inputs are 64-bit; products with coefficients above 2^62 could overflow 128 bits
  // only with thousands of variables, so exactness only hinges on the coefficients.
  if (!ok) big_ = qff;
}

bool QffEvaluator::eval_node(std::uint32_t idx, const std::int64_t* values) const {
  const Op& op = ops_[idx];
  switch (op.kind) {
    case 0:
      return true;
    case 1:
      return false;
    case 2: {
      const std::size_t n = vars_.size();
      const std::int64_t* row = coeffs_.data() + op.begin * (n + 2);
      __int128 s = row[n];
      for (std::size_t i = 0; i < n; ++i) s += static_cast<__int128>(row[i]) * values[i];
      switch (static_cast<Literal::Kind>(op.lit_kind)) {
        case Literal::Kind::Pos:
          return s > 0;
        case Literal::Kind::Eq:
          return s == 0;
        case Literal::Kind::Neq:
          return s != 0;
        case Literal::Kind::Div:
          return s % row[n + 1] == 0;
        case Literal::Kind::NDiv:
          return s % row[n + 1] != 0;
      }
      return false;
    }
    case 3:
      for (std::uint32_t i = 0; i < op.count; ++i) {
        if (!eval_node(child_slots_[op.begin + i], values)) return false;
      }
      return true;
    default:
      for (std::uint32_t i = 0; i < op.count; ++i) {
        if (eval_node(child_slots_[op.begin + i], values)) return true;
      }
      return false;
  }
}

bool QffEvaluator::eval(const std::int64_t* values) const {
  if (big_) {
    Assignment a;
    for (std::size_t i = 0; i < vars_.size(); ++i) a[vars_[i]] = Integer(static_cast<long>(values[i]));
    return big_->eval(a);
  }
  return eval_node(0, values);
}

}  // namespace saturator

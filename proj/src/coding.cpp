// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include "saturator/coding.hpp"

#include "saturator/errors.hpp"

namespace saturator {

namespace {

struct Split {
  unsigned long tag;
  Integer payload;
};

Split split(const Integer& code, unsigned long nullary, unsigned long arity) {
  Integer rest = code - nullary;
  return {mod(rest, arity).get_ui(), rest / arity};
}

Integer join(unsigned long tag, const Integer& payload, unsigned long nullary, unsigned long arity) {
  return payload * arity + tag + nullary;
}

// Tags in declaration order per signature.
unsigned long term_tag(Term::Kind kind, Signature sig) {
  using K = Term::Kind;
  switch (sig) {
    case Signature::Presburger:
      switch (kind) {
        case K::Var: return 0;
        case K::Const: return 1;
        case K::Add: return 2;
        case K::Sub: return 3;
        case K::Neg: return 4;
        case K::Scale: return 5;
        default: break;
      }
      break;
    case Signature::OrderedGroup:
      switch (kind) {
        case K::Var: return 0;
        case K::Add: return 1;
        case K::Sub: return 2;
        case K::Neg: return 3;
        case K::Scale: return 4;
        default: break;
      }
      break;
    case Signature::OrderedRing:
      switch (kind) {
        case K::Var: return 0;
        case K::Const: return 1;
        case K::Add: return 2;
        case K::Sub: return 3;
        case K::Neg: return 4;
        case K::Mul: return 5;
        default: break;
      }
      break;
  }
  throw SignatureError("term constructor not encodable in the " + std::string(signature_name(sig)) + " signature");
}

unsigned long term_nullary(Signature sig) { return sig == Signature::OrderedGroup ? 1 : 0; }
unsigned long term_arity(Signature sig) { return sig == Signature::OrderedGroup ? 5 : 6; }
unsigned long formula_arity(Signature sig) { return sig == Signature::Presburger ? 9 : 8; }

}  // namespace

Integer encode(const Term& t, Signature sig) {
  using K = Term::Kind;
  if (sig == Signature::OrderedGroup && t.kind() == K::Const) {
    if (t.value() != 0) throw SignatureError("non-zero constant in the og signature");
    return 0;
  }
  Integer payload;
  switch (t.kind()) {
    case K::Var:
      payload = variable_index(t.name());
      break;
    case K::Const:
      payload = zigzag(t.value());
      break;
    case K::Add:
    case K::Sub:
    case K::Mul:
      payload = pair(encode(t.lhs(), sig), encode(t.rhs(), sig));
      break;
    case K::Neg:
      payload = encode(t.lhs(), sig);
      break;
    case K::Scale:
      payload = pair(zigzag(t.value()), encode(t.lhs(), sig));
      break;
  }
  return join(term_tag(t.kind(), sig), payload, term_nullary(sig), term_arity(sig));
}

Term decode_term(const Integer& code, Signature sig) {
  if (code < 0) throw DecodeError("negative term code " + code.get_str());
  const unsigned long nullary = term_nullary(sig);
  if (code < nullary) return Term::constant(0);
  const Split s = split(code, nullary, term_arity(sig));
  // Map the og tag layout onto the shared constructor order (no Const tag there).
  unsigned long tag = s.tag;
  if (sig == Signature::OrderedGroup && tag >= 1) ++tag;
  switch (tag) {
    case 0:
      return Term::var(variable_name(s.payload));
    case 1:
      return Term::constant(unzigzag(s.payload));
    case 2:
    case 3: {
      auto [l, r] = unpair(s.payload);
      Term lhs = decode_term(l, sig);
      Term rhs = decode_term(r, sig);
      return tag == 2 ? Term::add(lhs, rhs) : Term::sub(lhs, rhs);
    }
    case 4:
      return Term::neg(decode_term(s.payload, sig));
    default: {
      auto [l, r] = unpair(s.payload);
      if (sig == Signature::OrderedRing) return Term::mul(decode_term(l, sig), decode_term(r, sig));
      return Term::scale(unzigzag(l), decode_term(r, sig));
    }
  }
}

Integer encode(const Formula& f, Signature sig) {
  using K = Formula::Kind;
  const bool pr = sig == Signature::Presburger;
  unsigned long tag = 0;
  Integer payload;
  switch (f.kind()) {
    case K::Lt:
    case K::Eq:
      tag = f.kind() == K::Lt ? 0 : 1;
      payload = pair(encode(f.lhs_term(), sig), encode(f.rhs_term(), sig));
      break;
    case K::Divides:
      if (!pr) throw SignatureError("divisibility predicate outside the pr signature");
      tag = 2;
      payload = pair(f.modulus() - 2, encode(f.term(), sig));
      break;
    case K::Not:
      tag = 2;
      payload = encode(f.operand(), sig);
      break;
    case K::And:
    case K::Or:
    case K::Implies:
      tag = f.kind() == K::And ? 3 : f.kind() == K::Or ? 4 : 5;
      payload = pair(encode(f.left(), sig), encode(f.right(), sig));
      break;
    case K::Exists:
    case K::Forall:
      tag = f.kind() == K::Exists ? 6 : 7;
      payload = pair(variable_index(f.bound_var()), encode(f.body(), sig));
      break;
  }
  if (pr && f.kind() != K::Lt && f.kind() != K::Eq && f.kind() != K::Divides) ++tag;
  return join(tag, payload, 0, formula_arity(sig));
}

Formula decode(const Integer& code, Signature sig) {
  if (code < 0) throw DecodeError("negative formula code " + code.get_str());
  const Split s = split(code, 0, formula_arity(sig));
  unsigned long tag = s.tag;
  if (sig == Signature::Presburger) {
    if (tag == 2) {
      auto [n, t] = unpair(s.payload);
      return Formula::divides(n + 2, decode_term(t, sig));
    }
    if (tag > 2) --tag;
  }
  switch (tag) {
    case 0:
    case 1: {
      auto [l, r] = unpair(s.payload);
      Term lhs = decode_term(l, sig);
      Term rhs = decode_term(r, sig);
      return tag == 0 ? Formula::lt(lhs, rhs) : Formula::eq(lhs, rhs);
    }
    case 2:
      return Formula::negation(decode(s.payload, sig));
    case 3:
    case 4:
    case 5: {
      auto [l, r] = unpair(s.payload);
      Formula lhs = decode(l, sig);
      Formula rhs = decode(r, sig);
      if (tag == 3) return Formula::conjunction(lhs, rhs);
      if (tag == 4) return Formula::disjunction(lhs, rhs);
      return Formula::implication(lhs, rhs);
    }
    default: {
      auto [v, b] = unpair(s.payload);
      Formula body = decode(b, sig);
      return tag == 6 ? Formula::exists(variable_name(v), body) : Formula::forall(variable_name(v), body);
    }
  }
}

}  // namespace saturator

// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <set>

#include "saturator/errors.hpp"
#include "saturator/rcf.hpp"

namespace saturator {

bool decide_cut(const Formula& f, const std::string& var, const CutElement& b, const RealAssignment& params,
                const Budget& budget) {
  const CellDecomposition dec = decompose(f, var, params);
  if (dec.cells.size() == 1) return dec.cells[0].value;
  const std::vector<RealAlgebraic> points = dec.points();
  // Number of points below b.
  std::size_t lo = 0, hi = points.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (b.compare(points[mid], budget) < 0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return dec.cells.at(2 * lo).value;
}

namespace {

RealAssignment slot_assignment(const std::vector<RealAlgebraic>& tuple, std::size_t first_slot = 0) {
  RealAssignment out;
  for (std::size_t i = 0; i < tuple.size(); ++i) out.emplace(slot_name(first_slot + i), tuple[i]);
  return out;
}

bool evaluate_shallow(const Formula& f, const RealAssignment& values) {
  switch (f.kind()) {
    case Formula::Kind::Not:
      return !evaluate_shallow(f.operand(), values);
    case Formula::Kind::And:
      return evaluate_shallow(f.left(), values) && evaluate_shallow(f.right(), values);
    case Formula::Kind::Or:
      return evaluate_shallow(f.left(), values) || evaluate_shallow(f.right(), values);
    case Formula::Kind::Implies:
      return !evaluate_shallow(f.left(), values) || evaluate_shallow(f.right(), values);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      if (!f.body().is_quantifier_free()) throw Unsupported("nested quantifier in " + to_string(f));
      RealAssignment rest = values;
      rest.erase(f.bound_var());
      const CellDecomposition dec = decompose(f.body(), f.bound_var(), rest);
      const bool exists = f.kind() == Formula::Kind::Exists;
      for (const auto& c : dec.cells) {
        if (c.value == exists) return exists;
      }
      return !exists;
    }
    default:
      return evaluate(f, values);
  }
}

Term dyadic_times(const Integer& scale, const std::string& name) {
  if (scale == 1) return Term::var(name);
  return Term::mul(Term::constant(scale), Term::var(name));
}

// num / 2^e < x  as  num < 2^e * x.
Formula dyadic_below(const Integer& num, const Integer& pow2, const std::string& x) {
  return Formula::lt(Term::constant(num), dyadic_times(pow2, x));
}
Formula dyadic_above(const Integer& num, const Integer& pow2, const std::string& x) {
  return Formula::lt(dyadic_times(pow2, x), Term::constant(num));
}

}  // namespace

bool decide_cut_reduction(const Formula& f, const std::string& var, const std::vector<std::string>& params,
                          const CutReduction& oracles, const Budget& budget) {
  const std::size_t k = oracles.context_arity;
  if (oracles.tp_b_a.arity() != k + 1) throw DomainError("tp(b, a) must have arity context_arity + 1");
  if (oracles.tp_a_c.arity() != k + params.size()) throw DomainError("tp(a, c) arity does not match the parameters");
  for (const auto& v : f.free_vars()) {
    if (v != var && std::find(params.begin(), params.end(), v) == params.end()) {
      throw DomainError("free variable " + v + " is neither the cut variable nor a parameter");
    }
  }
  // Rename through fresh names so slot names cannot collide with originals.
  std::set<std::string> used(f.free_vars().begin(), f.free_vars().end());
  for (std::size_t i = 0; i < k + params.size() + 1; ++i) used.insert(slot_name(i));
  auto fresh = [&](std::string base) {
    for (std::size_t i = 0;; ++i) {
      std::string name = base + std::to_string(i);
      if (used.insert(name).second) return name;
    }
  };
  const std::string u = fresh("u");
  Formula psi = substitute(f, var, Term::var(u));
  std::vector<std::string> temps;
  for (const auto& p : params) {
    temps.push_back(fresh("t"));
    psi = substitute(psi, p, Term::var(temps.back()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) psi = substitute(psi, temps[i], Term::var(slot_name(k + i)));

  std::size_t steps = 0;
  auto tick = [&] {
    if (++steps > budget.search_terms) {
      throw BudgetExhausted("cut reduction exceeded " + std::to_string(budget.search_terms) + " oracle queries");
    }
  };
  auto certified = [&](const Formula& guard) -> std::optional<bool> {
    tick();
    if (oracles.tp_a_c.contains(Formula::forall(u, Formula::implication(guard, psi)))) return true;
    tick();
    if (oracles.tp_a_c.contains(Formula::forall(u, Formula::implication(guard, Formula::negation(psi))))) {
      return false;
    }
    return std::nullopt;
  };
  // b's slot in tp(b, a) is the first one.
  const std::string bslot = slot_name(0);
  auto b_above = [&](const Integer& num, const Integer& pow2) {
    tick();
    return oracles.tp_b_a.contains(dyadic_below(num, pow2, bslot));
  };

  if (auto r = certified(Formula::truth())) return *r;
  // Integer bracket n < b < n + 1.
  Integer n = 0;
  if (b_above(0, 1)) {
    while (b_above(n + 1, 1)) ++n;
  } else {
    n = -1;
    while (!b_above(n, 1)) --n;
  }
  Integer lo = n, hi = n + 1, pow2 = 1;
  while (true) {
    const Formula guard = Formula::conjunction(dyadic_below(lo, pow2, u), dyadic_above(hi, pow2, u));
    if (auto r = certified(guard)) return *r;
    lo *= 2;
    hi *= 2;
    pow2 *= 2;
    const Integer mid = lo + 1;
    if (b_above(mid, pow2)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

TypeOracle algebraic_type(std::vector<RealAlgebraic> tuple, std::string label) {
  const std::size_t arity = tuple.size();
  const RealAssignment values = slot_assignment(tuple);
  return TypeOracle::from_decider(Signature::OrderedRing, arity, std::move(label),
                                  [values](const Formula& f) { return evaluate_shallow(f, values); });
}

TypeOracle cut_type(const CutElement& b, std::vector<RealAlgebraic> context, const Budget& budget, std::string label) {
  const std::size_t arity = context.size() + 1;
  const RealAssignment values = slot_assignment(context, 1);
  return TypeOracle::from_decider(
      Signature::OrderedRing, arity, std::move(label), [b, values, budget](const Formula& f) {
        if (!f.is_quantifier_free()) throw Unsupported("cut types answer quantifier-free formulas only");
        const auto& fv = f.free_vars();
        const std::string bslot = slot_name(0);
        if (std::find(fv.begin(), fv.end(), bslot) == fv.end()) return evaluate(f, values);
        return decide_cut(f, bslot, b, values, budget);
      });
}

}  // namespace saturator

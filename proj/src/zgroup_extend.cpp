// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <functional>
#include <set>

#include "saturator/errors.hpp"
#include "saturator/zgroup.hpp"

namespace saturator {

namespace {

const std::string kVar = "a";

ElementAssignment param_values(const CutSpec& p) {
  ElementAssignment out;
  for (std::size_t i = 0; i < p.params.size(); ++i) out.emplace(slot_name(i + 1), p.params[i]);
  return out;
}

HahnVector dcl_value(const ZModel& model, const DclTerm& term, const ElementAssignment& ctx) {
  if (term.divisor < 1) throw DomainError("dcl term divisor must be positive");
  return model.position(model.linear(term.numerator, ctx)).divided(term.divisor);
}

ModelElement dcl_element(const ZModel& model, const DclTerm& term, const ElementAssignment& ctx) {
  return model.divide(model.linear(term.numerator, ctx), term.divisor);
}

HahnVector infinite_part(const HahnVector& v) {
  HahnVector out = v;
  out.set(0, 0);
  return out;
}

// Rows with distinct leading exponents spanning the inputs; combos record each row in
// terms of the inputs.
struct Echelon {
  std::vector<HahnVector> rows;
  std::vector<std::vector<Rational>> combos;

  explicit Echelon(const std::vector<HahnVector>& inputs) {
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      HahnVector v = inputs[i];
      std::vector<Rational> combo(inputs.size(), 0);
      combo[i] = 1;
      bool again = true;
      while (!v.is_zero() && again) {
        again = false;
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (*rows[r].leading_exponent() != *v.leading_exponent()) continue;
          const Rational f = v.leading_coefficient() / rows[r].leading_coefficient();
          v = v - rows[r].scaled(f);
          for (std::size_t j = 0; j < combo.size(); ++j) combo[j] -= f * combos[r][j];
          again = true;
          break;
        }
      }
      if (!v.is_zero()) {
        rows.push_back(v);
        combos.push_back(combo);
      }
    }
  }
};

struct Bound {
  LinearTerm num;
  Integer den;
  Formula below(const std::string& var) const {  // num / den < var
    return Formula::lt(num.to_term(), LinearTerm::variable(var, den).to_term());
  }
  Formula above(const std::string& var) const {
    return Formula::lt(LinearTerm::variable(var, den).to_term(), num.to_term());
  }
};

Formula divisible(const Integer& n, const LinearTerm& t) {
  return n == 1 ? Formula::truth() : Formula::divides(n, t.to_term());
}

// g + d n L and g + d U / n.
std::pair<Bound, std::optional<Bound>> level_bounds(const CutSpec& p, const Integer& n) {
  const auto& g = p.center;
  const auto& l = p.lower_scale;
  Bound near{g.numerator * l.divisor + l.numerator * (p.direction * n * g.divisor), g.divisor * l.divisor};
  std::optional<Bound> far;
  if (p.upper_scale) {
    const auto& u = *p.upper_scale;
    far = Bound{g.numerator * (n * u.divisor) + u.numerator * (p.direction * g.divisor), n * u.divisor * g.divisor};
  }
  return {near, far};
}

// True iff the value l lies below every realization of the cut.
bool below_cut(const CutSpec& p, const CutWindow& w, const HahnVector& g, const HahnVector& l) {
  const HahnVector d = l - g;
  const int s = d.sign();
  if (p.direction > 0) {
    if (s <= 0) return true;
    const Rational e = *d.leading_exponent();
    if (e <= w.low) return true;
    if (!w.high || e < *w.high) throw ConsistencyViolation("a parameter-definable point lies inside the cut");
    return false;
  }
  if (s >= 0) return false;
  const Rational e = *d.leading_exponent();
  if (e <= w.low) return false;
  if (!w.high || e < *w.high) throw ConsistencyViolation("a parameter-definable point lies inside the cut");
  return true;
}

void check_profile(const ResidueProfile& p) {
  for (int n = 1; n <= 12; ++n) p.residue(n);
  if (auto bad = p.coherence_violation()) {
    throw PreconditionViolation("incoherent residues: " + to_string(bad->first.residue) + " mod " +
                                to_string(bad->first.modulus) + " vs " + to_string(bad->second.residue) + " mod " +
                                to_string(bad->second.modulus));
  }
}

std::optional<Formula> failing_bound(const ZModel& model, const CutSpec& p, const ModelElement& b, std::size_t level) {
  ElementAssignment values = param_values(p);
  values.emplace(kVar, b);
  for (std::size_t n = 1; n <= level; ++n) {
    auto [near, far] = level_bounds(p, n);
    const Formula f1 = p.direction > 0 ? near.below(kVar) : near.above(kVar);
    if (!model.decide(f1, values)) return f1;
    if (far) {
      const Formula f2 = p.direction > 0 ? far->above(kVar) : far->below(kVar);
      if (!model.decide(f2, values)) return f2;
    }
  }
  return std::nullopt;
}

void verify_realization(const ZModel& model, const CutSpec& p, const ModelElement& b, std::size_t level) {
  ElementAssignment values = param_values(p);
  values.emplace(kVar, b);
  for (const auto& f : p.materialize(level)) {
    if (!model.decide(f, values)) throw ConsistencyViolation("realization fails " + to_string(f));
  }
}

std::string fresh_name(const ZModel& model, const std::string& wanted, const std::string& stem) {
  if (!wanted.empty()) return wanted;
  for (std::size_t i = model.size() + 1;; ++i) {
    std::string name = stem + std::to_string(i);
    bool taken = false;
    for (const auto& g : model.generators()) taken = taken || g.name == name;
    if (!taken) return name;
  }
}

}  // namespace

std::vector<Formula> CutSpec::materialize(std::size_t level) const {
  std::vector<Formula> out;
  for (std::size_t k = 1; k <= level; ++k) {
    const Integer n = static_cast<unsigned long>(k);
    auto [near, far] = level_bounds(*this, n);
    out.push_back(direction > 0 ? near.below(kVar) : near.above(kVar));
    if (far) out.push_back(direction > 0 ? far->above(kVar) : far->below(kVar));
    if (n > 1) out.push_back(divisible(n, LinearTerm::variable(kVar).plus(-residues.residue(n))));
  }
  return out;
}

CutWindow validate_cut(const ZModel& model, const CutSpec& p) {
  if (p.direction != 1 && p.direction != -1) throw DomainError("cut direction must be +1 or -1");
  for (std::size_t i = 0; i < p.params.size(); ++i) model.position(p.params[i]);
  const ElementAssignment ctx = param_values(p);
  dcl_element(model, p.center, ctx);
  const HahnVector low = dcl_value(model, p.lower_scale, ctx);
  if (low.sign() <= 0) throw DomainError("lower scale must be positive");
  CutWindow w{*low.leading_exponent(), std::nullopt};
  if (p.upper_scale) {
    const HahnVector high = dcl_value(model, *p.upper_scale, ctx);
    if (high.sign() <= 0) throw DomainError("upper scale must be positive");
    w.high = *high.leading_exponent();
    if (!(w.low < *w.high)) throw DomainError("the cut's class window is empty");
  }
  std::vector<HahnVector> spans;
  for (const auto& x : p.params) spans.push_back(infinite_part(model.position(x)));
  for (const auto& row : Echelon(spans).rows) {
    if (w.contains(*row.leading_exponent())) {
      throw DomainError("a parameter-definable point lies inside the cut's class window");
    }
  }
  ElementAssignment values = ctx;
  for (std::size_t k = 1; k <= 8; ++k) {
    auto [near, far] = level_bounds(p, static_cast<unsigned long>(k));
    if (!far) continue;
    const HahnVector a = model.position(model.linear(near.num, ctx)).divided(near.den);
    const HahnVector b = model.position(model.linear(far->num, ctx)).divided(far->den);
    if (compare(a, b) * p.direction >= 0) throw DomainError("materialized lower and upper bounds cross");
  }
  return w;
}

bool cut_realized(const ZModel& model, const CutSpec& p) {
  const CutWindow w = validate_cut(model, p);
  for (const auto& e : model.class_exponents()) {
    if (w.contains(e)) return true;
  }
  return false;
}

std::optional<ModelElement> cut_realization(const ZModel& model, const CutSpec& p) {
  const CutWindow w = validate_cut(model, p);
  std::vector<HahnVector> positions;
  for (const auto& g : model.generators()) positions.push_back(g.position);
  const Echelon ech(positions);
  for (std::size_t r = 0; r < ech.rows.size(); ++r) {
    if (!w.contains(*ech.rows[r].leading_exponent())) continue;
    Integer den = 1;
    for (const auto& q : ech.combos[r]) den = lcm(den, q.get_den());
    if (ech.rows[r].leading_coefficient() < 0) den = -den;
    std::vector<Integer> t;
    for (const auto& q : ech.combos[r]) t.push_back(Rational(q * den).get_num());
    const ModelElement y = model.element(0, std::move(t));
    const ModelElement g = dcl_element(model, p.center, param_values(p));
    return model.add(g, model.scale(p.direction, y));
  }
  return std::nullopt;
}

bool cut_type_contains(const ZModel& model, const CutSpec& p, const Formula& f) {
  const CutWindow w = validate_cut(model, p);
  const ElementAssignment ctx = param_values(p);
  const HahnVector g = dcl_value(model, p.center, ctx);
  const NormalForm nf = normal_form(f, kVar);
  for (const auto& cell : nf.cells) {
    bool ok = cell.equalities.empty();
    for (std::size_t i = 0; ok && i < cell.context.size(); ++i) ok = model.eval(cell.context[i], ctx);
    if (ok) ok = mod(p.residues.residue(cell.modulus) - cell.residue, cell.modulus) == 0;
    for (std::size_t i = 0; ok && i < cell.lower.size(); ++i) {
      ok = below_cut(p, w, g, dcl_value(model, cell.lower[i], ctx));
    }
    for (std::size_t i = 0; ok && i < cell.upper.size(); ++i) {
      ok = !below_cut(p, w, g, dcl_value(model, cell.upper[i], ctx));
    }
    if (ok) return true;
  }
  return false;
}

TypeOracle cut_type(const ZModel& model, const CutSpec& p, std::string label) {
  validate_cut(model, p);
  return TypeOracle::from_decider(Signature::Presburger, p.params.size() + 1, std::move(label),
                                  [model, p](const Formula& f) { return cut_type_contains(model, p, f); });
}

CaseOneExtension extend_case1(const ZModel& model, const CutSpec& p, std::string name) {
  const CutWindow w = validate_cut(model, p);
  check_profile(p.residues);
  if (cut_realized(model, p)) throw PreconditionViolation("the cut is realized in the model; use extend_case2");
  const Rational e = w.high ? Rational((w.low + *w.high) / 2) : Rational(w.low + 1);
  const ModelElement g = dcl_element(model, p.center, param_values(p));
  ResidueProfile profile = ResidueProfile::combination(
      0, {{Integer(p.direction), p.residues}, {Integer(-p.direction), model.profile_of(g)}});
  CaseOneExtension out;
  out.model = model.with_generator(Generator{fresh_name(model, name, "c"), HahnVector::monomial(e, 1), profile});
  out.generator = model.size();
  out.b = out.model.add(g, out.model.scale(p.direction, out.model.generator(out.generator)));
  verify_realization(out.model, p, out.b, 12);
  return out;
}

CaseTwoExtension extend_case2(const ZModel& model, const CutSpec& p, const ModelElement& b, std::size_t verify_level,
                              std::string name) {
  const CutWindow w = validate_cut(model, p);
  check_profile(p.residues);
  const HahnVector d = model.position(b) - dcl_value(model, p.center, param_values(p));
  if (d.sign() != p.direction || !w.contains(*d.leading_exponent())) {
    if (auto f = failing_bound(model, p, b, std::max<std::size_t>(verify_level, 64))) {
      throw PreconditionViolation(to_string(b, model.generators()) + " fails the bound " + to_string(*f));
    }
    throw PreconditionViolation(to_string(b, model.generators()) + " does not realize the cut");
  }
  std::optional<Rational> least;
  for (const auto& g : model.generators()) {
    for (const auto& [e, c] : g.position.terms()) {
      if (!least || e < *least) least = e;
    }
  }
  const Rational e = least ? Rational(*least / 2) : Rational(1);
  ResidueProfile profile =
      ResidueProfile::combination(0, {{Integer(1), p.residues}, {Integer(-1), model.profile_of(b)}});
  CaseTwoExtension out;
  out.model = model.with_generator(Generator{fresh_name(model, name, "e"), HahnVector::monomial(e, 1), profile});
  out.epsilon = model.size();
  out.realization = out.model.add(b, out.model.generator(out.epsilon));
  verify_realization(out.model, p, out.realization, verify_level);
  return out;
}

TypeOracle type_of(const ZModel& model, std::vector<ModelElement> tuple, std::string label, DecideOptions opts) {
  ElementAssignment values;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    model.position(tuple[i]);
    values.emplace(slot_name(i), tuple[i]);
  }
  return TypeOracle::from_decider(Signature::Presburger, tuple.size(), std::move(label),
                                  [model, values, opts](const Formula& f) { return model.decide(f, values, opts); });
}

namespace {

void collect_moduli(const Formula& f, Integer& acc) {
  switch (f.kind()) {
    case Formula::Kind::Divides:
      acc = lcm(acc, f.modulus());
      return;
    case Formula::Kind::Not:
      collect_moduli(f.operand(), acc);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_moduli(f.left(), acc);
      collect_moduli(f.right(), acc);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      collect_moduli(f.body(), acc);
      return;
    default:
      return;
  }
}

std::vector<Integer> prime_powers(Integer n) {
  std::vector<Integer> out;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    Integer q = 1;
    while (n % p == 0) {
      n /= p;
      q *= p;
    }
    out.push_back(q);
  }
  if (n > 1) out.push_back(n);
  return out;
}

struct Candidate {
  std::vector<Integer> n;
  Integer r;
  Integer m;
  LinearTerm numerator(std::size_t first_slot) const {
    LinearTerm t(r);
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (n[i] != 0) t = t + LinearTerm::variable(slot_name(first_slot + i), n[i]);
    }
    return t;
  }
};

// Coefficient vectors in [-s, s]^k x ([-s, s] + {+-2^s}) x [1, s] touching the boundary s, gcd 1.
void level_candidates(std::size_t k, long s, const std::function<void(const Candidate&)>& visit) {
  Candidate c;
  c.n.assign(k, 0);
  std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool edge) {
    if (i < k) {
      for (long x = -s; x <= s; ++x) {
        c.n[i] = x;
        rec(i + 1, edge || x == s || x == -s);
      }
      return;
    }
    std::vector<Integer> rs;
    for (long r = -s; r <= s; ++r) rs.push_back(r);
    Integer far = 1;
    far <<= s;
    if (far > s) {
      rs.push_back(far);
      rs.push_back(-far);
    }
    for (const auto& r : rs) {
      for (long m = 1; m <= s; ++m) {
        if (!(edge || abs(r) >= s || m == s)) continue;
        Integer g = gcd(r, Integer(m));
        for (const auto& x : c.n) g = gcd(g, x);
        if (g != 1) continue;
        c.r = r;
        c.m = m;
        visit(c);
      }
    }
  };
  rec(0, false);
}

}  // namespace

bool decide_by_reduction(const Formula& f, std::size_t arity, const TypeReduction& oracles, const Budget& budget) {
  const std::size_t k = oracles.context_arity;
  if (arity < 1) throw DomainError("reduction needs the tuple (b, c...)");
  if (oracles.tp_b_a.arity() != k + 1) throw DomainError("tp(b, a) must have arity context_arity + 1");
  if (oracles.tp_a_c.arity() != k + arity - 1) throw DomainError("tp(a, c) arity does not match the tuple");
  std::set<std::string> used(f.free_vars().begin(), f.free_vars().end());
  for (const auto& v : f.free_vars()) {
    bool slot = false;
    for (std::size_t i = 0; i < arity; ++i) slot = slot || v == slot_name(i);
    if (!slot) return false;
  }
  for (std::size_t i = 0; i < k + arity + 1; ++i) used.insert(slot_name(i));
  auto fresh = [&](const std::string& base) {
    for (std::size_t i = 0;; ++i) {
      std::string name = base + std::to_string(i);
      if (used.insert(name).second) return name;
    }
  };
  const std::string u = fresh("u");
  Formula psi = substitute(f, slot_name(0), Term::var(u));
  std::vector<std::string> temps;
  for (std::size_t i = 1; i < arity; ++i) {
    temps.push_back(fresh("t"));
    psi = substitute(psi, slot_name(i), Term::var(temps.back()));
  }
  for (std::size_t i = 1; i < arity; ++i) psi = substitute(psi, temps[i - 1], Term::var(slot_name(k + i - 1)));

  std::size_t steps = 0;
  auto tick = [&] {
    if (++steps > budget.search_terms) {
      throw BudgetExhausted("type reduction exceeded " + std::to_string(budget.search_terms) + " oracle queries");
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
  if (auto r = certified(Formula::truth())) return *r;

  const std::string bslot = slot_name(0);
  std::map<Integer, Integer> residue_cache;
  auto residue_of_b = [&](const Integer& q) {
    auto it = residue_cache.find(q);
    if (it != residue_cache.end()) return it->second;
    for (Integer j = 0; j < q; ++j) {
      tick();
      if (oracles.tp_b_a.contains(Formula::divides(q, LinearTerm::variable(bslot).plus(-j).to_term()))) {
        residue_cache.emplace(q, j);
        return j;
      }
    }
    throw ConsistencyViolation("tp(b, a) assigns b no residue mod " + to_string(q));
  };
  Integer base_modulus = 1;
  collect_moduli(psi, base_modulus);

  std::optional<Candidate> lower, upper;
  auto b_holds = [&](const Formula& g) {
    tick();
    return oracles.tp_b_a.contains(g);
  };
  for (long s = 1;; ++s) {
    level_candidates(k, s, [&](const Candidate& c) {
      const LinearTerm num = c.numerator(1);
      if (b_holds(Bound{num, c.m}.below(bslot))) {
        // c < b; keep the largest.
        if (!lower || b_holds(Formula::lt((lower->numerator(1) * c.m).to_term(), (num * lower->m).to_term()))) {
          lower = c;
        }
      } else if (b_holds(Bound{num, c.m}.above(bslot))) {
        if (!upper || b_holds(Formula::lt((num * upper->m).to_term(), (upper->numerator(1) * c.m).to_term()))) {
          upper = c;
        }
      }
    });
    Integer modulus = base_modulus;
    for (long j = 2; j <= s; ++j) modulus = lcm(modulus, Integer(j));
    std::vector<DivConstraint> residues;
    for (const auto& q : prime_powers(modulus)) residues.push_back({residue_of_b(q), q});
    const CrtResult crt = crt_consistent(residues);
    Formula guard = divisible(modulus, LinearTerm::variable(u).plus(-crt.witness));
    if (lower) guard = Formula::conjunction(Bound{lower->numerator(0), lower->m}.below(u), guard);
    if (upper) guard = Formula::conjunction(guard, Bound{upper->numerator(0), upper->m}.above(u));
    if (auto r = certified(guard)) return *r;
  }
}

TypeOracle type_of_reduction(TypeReduction oracles, std::size_t arity, Budget budget, std::string label) {
  return TypeOracle::from_decider(
      Signature::Presburger, arity, std::move(label),
      [oracles, arity, budget](const Formula& f) { return decide_by_reduction(f, arity, oracles, budget); });
}

}  // namespace saturator

// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "saturator/errors.hpp"
#include "saturator/presburger.hpp"

namespace saturator {

CrtResult crt_consistent(const std::vector<DivConstraint>& constraints) {
  std::vector<DivConstraint> cs;
  for (const auto& c : constraints) {
    if (c.modulus < 1) throw DomainError("congruence modulus must be positive");
    cs.push_back({mod(c.residue, c.modulus), c.modulus});
  }
  CrtResult r;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      if (mod(cs[i].residue - cs[j].residue, gcd(cs[i].modulus, cs[j].modulus)) != 0) {
        r.consistent = false;
        r.conflict = std::make_pair(constraints[i], constraints[j]);
        return r;
      }
    }
  }
  Integer x = 0, m = 1;
  for (const auto& c : cs) {
    const Integer g = gcd(m, c.modulus);
    const Integer step = c.modulus / g;
    Integer k = 0;
    if (step > 1) k = mod((c.residue - x) / g * mod_inverse(mod(m / g, step), step), step);
    x += m * k;
    m = lcm(m, c.modulus);
    x = mod(x, m);
  }
  r.witness = x;
  r.modulus = m;
  return r;
}

std::string DclTerm::to_string() const {
  const std::string num = saturator::to_string(numerator.to_term());
  if (divisor == 1) return num;
  return "(" + num + ")/" + divisor.get_str();
}

bool NormalFormCell::holds(const Integer& v, const Assignment& ctx) const {
  for (const auto& l : context) {
    if (!l.eval(ctx)) return false;
  }
  if (mod(v - residue, modulus) != 0) return false;
  for (const auto& e : equalities) {
    if (e.divisor * v != e.numerator.eval(ctx)) return false;
  }
  for (const auto& e : lower) {
    if (e.divisor * v <= e.numerator.eval(ctx)) return false;
  }
  for (const auto& e : upper) {
    if (e.divisor * v >= e.numerator.eval(ctx)) return false;
  }
  return true;
}

bool NormalFormCell::certificates_hold(const Assignment& ctx) const {
  for (const auto& l : context) {
    if (!l.eval(ctx)) return true;
  }
  for (const auto* group : {&equalities, &lower, &upper}) {
    for (const auto& e : *group) {
      if (mod(e.numerator.eval(ctx), e.divisor) != 0) return false;
    }
  }
  return true;
}

Qff NormalFormCell::to_qff(const std::string& var) const {
  std::vector<Qff> parts;
  for (const auto& l : context) parts.push_back(Qff::literal(l));
  const LinearTerm v = LinearTerm::variable(var);
  if (modulus > 1) parts.push_back(Qff::literal({Literal::Kind::Div, v.plus(-residue), modulus}));
  for (const auto& e : equalities) parts.push_back(Qff::literal({Literal::Kind::Eq, v * e.divisor - e.numerator, 0}));
  for (const auto& e : lower) parts.push_back(Qff::literal({Literal::Kind::Pos, v * e.divisor - e.numerator, 0}));
  for (const auto& e : upper) parts.push_back(Qff::literal({Literal::Kind::Pos, e.numerator - v * e.divisor, 0}));
  return Qff::conjunction(std::move(parts));
}

Qff NormalForm::to_qff() const {
  std::vector<Qff> parts;
  for (const auto& c : cells) parts.push_back(c.to_qff(var));
  return Qff::disjunction(std::move(parts));
}

namespace {

// Partially built cell: congruences are merged at the end.
struct Draft {
  std::vector<Literal> context;
  std::vector<DivConstraint> congruences;
  std::vector<DclTerm> equalities, lower, upper;
};

using Option = Draft;

// Adds a context literal; false when it is decided false.
bool add_context(Draft& d, const Literal& l) {
  auto n = normalize(l);
  if (std::holds_alternative<bool>(n)) return std::get<bool>(n);
  d.context.push_back(std::get<Literal>(n));
  return true;
}

// Residues rho of t mod n with their context literal n | t - rho.
std::vector<std::pair<Integer, Option>> residue_cases(const LinearTerm& t, const Integer& n) {
  std::vector<std::pair<Integer, Option>> out;
  if (t.is_constant()) {
    out.emplace_back(mod(t.constant(), n), Option{});
    return out;
  }
  for (Integer rho = 0; rho < n; ++rho) {
    Option o;
    if (add_context(o, {Literal::Kind::Div, t.plus(-rho), n})) out.emplace_back(rho, std::move(o));
  }
  return out;
}

std::vector<Option> options_for(const Literal& lit, const std::string& v) {
  Integer c = lit.term.coeff(v);
  LinearTerm t = lit.term.without(v);
  std::vector<Option> out;
  switch (lit.kind) {
    case Literal::Kind::Pos: {
      const bool lower = c > 0;
      const Integer m = abs(c);
      for (auto& [rho, o] : residue_cases(t, m)) {
        const Integer adjust = mod(-rho, m);
        if (lower) {
          o.lower.push_back({(-t).plus(-adjust), m});
        } else {
          o.upper.push_back({t.plus(adjust), m});
        }
        out.push_back(std::move(o));
      }
      break;
    }
    case Literal::Kind::Eq:
    case Literal::Kind::Neq: {
      if (c < 0) {
        c = -c;
        t = -t;
      }
      // c v + t = 0 exactly when c | t and v = -t / c.
      const DclTerm point{-t, c};
      if (lit.kind == Literal::Kind::Eq) {
        Option o;
        if (add_context(o, {Literal::Kind::Div, t, c})) {
          o.equalities.push_back(point);
          out.push_back(std::move(o));
        }
      } else {
        Option off;
        if (add_context(off, {Literal::Kind::NDiv, t, c})) out.push_back(std::move(off));
        Option below, above;
        if (add_context(below, {Literal::Kind::Div, t, c})) {
          above = below;
          below.upper.push_back(point);
          above.lower.push_back(point);
          out.push_back(std::move(below));
          out.push_back(std::move(above));
        }
      }
      break;
    }
    case Literal::Kind::Div:
    case Literal::Kind::NDiv: {
      const Integer& n = lit.modulus;
      for (auto& [rho, o] : residue_cases(t, n)) {
        if (lit.kind == Literal::Kind::Div) {
          // c v = -rho (mod n).
          const Integer g = gcd(c, n);
          if (mod(-rho, g) != 0) continue;
          const Integer n2 = n / g;
          const Integer r = n2 == 1 ? Integer(0) : mod(mod(-rho, n) / g * mod_inverse(mod(c / g, n2), n2), n2);
          o.congruences.push_back({r, n2});
          out.push_back(std::move(o));
        } else {
          for (Integer r = 0; r < n; ++r) {
            if (mod(c * r + rho, n) == 0) continue;
            Option allowed = o;
            allowed.congruences.push_back({r, n});
            out.push_back(std::move(allowed));
          }
        }
      }
      break;
    }
  }
  return out;
}

void merge_into(Draft& d, const Option& o) {
  d.context.insert(d.context.end(), o.context.begin(), o.context.end());
  d.congruences.insert(d.congruences.end(), o.congruences.begin(), o.congruences.end());
  d.equalities.insert(d.equalities.end(), o.equalities.begin(), o.equalities.end());
  d.lower.insert(d.lower.end(), o.lower.begin(), o.lower.end());
  d.upper.insert(d.upper.end(), o.upper.begin(), o.upper.end());
}

template <class T>
void dedupe(std::vector<T>& v) {
  std::vector<T> out;
  for (auto& x : v) {
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
  }
  v = std::move(out);
}

}  // namespace

NormalForm normal_form(const Formula& f, const std::string& var, const QeOptions& opts) {
  const Qff q = f.is_quantifier_free() ? Qff::from_formula(f) : cooper_qe(f, opts);
  constexpr std::size_t kCellCap = 100000;
  auto dnf = q.dnf(kCellCap);
  if (!dnf) throw QeBlowup("normal form needs more than " + std::to_string(kCellCap) + " conjuncts", kCellCap, kCellCap);

  NormalForm nf;
  nf.var = var;
  for (const auto& conj : *dnf) {
    std::vector<Draft> drafts{Draft{}};
    for (const auto& lit : conj) {
      if (!lit.term.has(var)) {
        for (auto& d : drafts) d.context.push_back(lit);
        continue;
      }
      std::vector<Draft> next;
      for (const auto& o : options_for(lit, var)) {
        for (const auto& d : drafts) {
          Draft m = d;
          merge_into(m, o);
          next.push_back(std::move(m));
        }
      }
      if (next.size() > kCellCap) {
        throw QeBlowup("normal form exceeds " + std::to_string(kCellCap) + " cells", next.size(), kCellCap);
      }
      drafts = std::move(next);
    }
    for (auto& d : drafts) {
      const CrtResult crt = crt_consistent(d.congruences);
      if (!crt.consistent) continue;
      std::vector<Qff> ctx;
      for (const auto& l : d.context) ctx.push_back(Qff::literal(l));
      const Qff c = Qff::conjunction(std::move(ctx));
      if (c.is_false()) continue;
      NormalFormCell cell;
      c.collect_literals(cell.context);
      dedupe(cell.context);
      cell.modulus = crt.modulus;
      cell.residue = crt.witness;
      cell.equalities = std::move(d.equalities);
      cell.lower = std::move(d.lower);
      cell.upper = std::move(d.upper);
      dedupe(cell.equalities);
      dedupe(cell.lower);
      dedupe(cell.upper);
      nf.cells.push_back(std::move(cell));
    }
  }
  return nf;
}

}  // namespace saturator

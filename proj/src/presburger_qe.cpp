// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <functional>
#include <numeric>

#include "saturator/errors.hpp"
#include "saturator/presburger.hpp"

namespace saturator {

namespace {

void check_cap(std::size_t literals, const QeOptions& opts) {
  if (literals > opts.literal_cap) {
    throw QeBlowup("quantifier elimination produced " + std::to_string(literals) + " literals (cap " +
                       std::to_string(opts.literal_cap) + ")",
                   literals, opts.literal_cap);
  }
}

Qff map_literals(const Qff& q, const std::function<Qff(const Literal&)>& fn) {
  switch (q.kind()) {
    case Qff::Kind::True:
    case Qff::Kind::False:
      return q;
    case Qff::Kind::Lit:
      return fn(q.lit());
    case Qff::Kind::And:
    case Qff::Kind::Or: {
      std::vector<Qff> parts;
      parts.reserve(q.children().size());
      for (const auto& k : q.children()) parts.push_back(map_literals(k, fn));
      return q.kind() == Qff::Kind::And ? Qff::conjunction(std::move(parts)) : Qff::disjunction(std::move(parts));
    }
  }
  return q;
}

// Rewrites every literal so that x has coefficient +-1, standing for L*x, and adds L | x.
Qff unit_coefficients(const std::string& x, const Qff& body, Integer& lcm_out) {
  std::vector<Literal> lits;
  body.collect_literals(lits);
  Integer L = 1;
  for (const auto& l : lits) {
    if (l.term.has(x)) L = lcm(L, l.term.coeff(x));
  }
  L = abs(L);
  lcm_out = L;
  if (L == 1) return body;
  Qff scaled = map_literals(body, [&](const Literal& l) {
    const Integer c = l.term.coeff(x);
    if (c == 0) return Qff::literal(l);
    const Integer m = L / abs(c);
    Literal r = l;
    r.term = l.term * m;
    r.term.set_coeff(x, sgn(c));
    if (r.kind == Literal::Kind::Div || r.kind == Literal::Kind::NDiv) r.modulus = l.modulus * m;
    return Qff::literal(r);
  });
  return Qff::conjunction({scaled, Qff::literal({Literal::Kind::Div, LinearTerm::variable(x), L})});
}

struct Bounds {
  std::vector<LinearTerm> b_set;
  std::vector<LinearTerm> a_set;
  Integer period = 1;
  bool has_lower = false;
  bool has_upper = false;
};

void add_unique(std::vector<LinearTerm>& v, const LinearTerm& t) {
  if (std::find(v.begin(), v.end(), t) == v.end()) v.push_back(t);
}

// x has coefficient s = +-1 in every literal.
Bounds collect_bounds(const std::string& x, const std::vector<Literal>& lits) {
  Bounds b;
  for (const auto& l : lits) {
    const Integer s = l.term.coeff(x);
    if (s == 0) continue;
    const LinearTerm rest = l.term.without(x);
    // Point where s*x + rest vanishes.
    const LinearTerm point = s > 0 ? -rest : rest;
    switch (l.kind) {
      case Literal::Kind::Pos:
        if (s > 0) {
          add_unique(b.b_set, point);
          b.has_lower = true;
        } else {
          add_unique(b.a_set, point);
          b.has_upper = true;
        }
        break;
      case Literal::Kind::Eq:
        add_unique(b.b_set, point.plus(-1));
        add_unique(b.a_set, point.plus(1));
        b.has_lower = b.has_upper = true;
        break;
      case Literal::Kind::Neq:
        add_unique(b.b_set, point);
        add_unique(b.a_set, point);
        break;
      case Literal::Kind::Div:
      case Literal::Kind::NDiv:
        b.period = lcm(b.period, l.modulus);
        break;
    }
  }
  return b;
}

// phi at x -> -infinity (lower = true) or +infinity.
Qff at_infinity(const std::string& x, const Qff& body, bool minus) {
  return map_literals(body, [&](const Literal& l) {
    const Integer s = l.term.coeff(x);
    if (s == 0) return Qff::literal(l);
    switch (l.kind) {
      case Literal::Kind::Pos:
        return ((s > 0) != minus) ? Qff::truth() : Qff::falsity();
      case Literal::Kind::Eq:
        return Qff::falsity();
      case Literal::Kind::Neq:
        return Qff::truth();
      default:
        return Qff::literal(l);
    }
  });
}

// Disjunction over j = 1..D and each point of the test set: body[x := point +- j].
Qff expand(const std::string& x, const Qff& body, const Qff& inf_body, const std::vector<LinearTerm>& points,
           const Integer& period, bool use_b, const QeOptions& opts) {
  std::vector<Qff> parts;
  std::size_t literals = 0;
  auto push = [&](Qff q) {
    if (q.is_true()) return true;
    literals += q.literal_count();
    check_cap(literals, opts);
    parts.push_back(std::move(q));
    return false;
  };
  for (Integer j = 1; j <= period; ++j) {
    const Integer shift = use_b ? j : Integer(-j);
    if (!inf_body.is_false() && push(inf_body.substitute(x, LinearTerm(shift)))) return Qff::truth();
    for (const auto& p : points) {
      if (push(body.substitute(x, p.plus(shift)))) return Qff::truth();
    }
  }
  return Qff::disjunction(std::move(parts));
}

Qff tree_path(const std::string& x, const Qff& body, const QeOptions& opts) {
  std::vector<Literal> lits;
  body.collect_literals(lits);
  Bounds b = collect_bounds(x, lits);
  const bool use_b = b.b_set.size() <= b.a_set.size();
  const Qff inf = at_infinity(x, body, use_b);
  return expand(x, body, inf, use_b ? b.b_set : b.a_set, b.period, use_b, opts);
}

// Elimination for a conjunction of literals in which x has coefficient +-1.
Qff conjunct_path(const std::string& x, const std::vector<Literal>& lits, const QeOptions& opts) {
  std::vector<Qff> rest;
  std::vector<Literal> with_x;
  for (const auto& l : lits) {
    if (l.term.has(x)) {
      with_x.push_back(l);
    } else {
      rest.push_back(Qff::literal(l));
    }
  }
  if (with_x.empty()) return Qff::conjunction(std::move(rest));

  // An equation pins x.
  for (std::size_t i = 0; i < with_x.size(); ++i) {
    if (with_x[i].kind != Literal::Kind::Eq) continue;
    const Integer s = with_x[i].term.coeff(x);
    const LinearTerm rest_term = with_x[i].term.without(x);
    const LinearTerm value = s > 0 ? -rest_term : rest_term;
    for (std::size_t k = 0; k < with_x.size(); ++k) {
      if (k == i) continue;
      Literal l = with_x[k];
      l.term = l.term.substitute(x, value);
      rest.push_back(Qff::literal(l));
    }
    return Qff::conjunction(std::move(rest));
  }

  const bool only_div = std::all_of(with_x.begin(), with_x.end(), [](const Literal& l) {
    return l.kind == Literal::Kind::Div || l.kind == Literal::Kind::NDiv;
  });
  if (only_div) {
    // Coprime groups are independent by the Chinese remainder theorem.
    std::vector<std::size_t> parent(with_x.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
      return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    for (std::size_t i = 0; i < with_x.size(); ++i) {
      for (std::size_t k = i + 1; k < with_x.size(); ++k) {
        if (gcd(with_x[i].modulus, with_x[k].modulus) > 1) parent[find(i)] = find(k);
      }
    }
    std::map<std::size_t, std::vector<Literal>> groups;
    for (std::size_t i = 0; i < with_x.size(); ++i) groups[find(i)].push_back(with_x[i]);
    for (const auto& [root, group] : groups) {
      Integer period = 1;
      std::vector<Qff> lits_q;
      for (const auto& l : group) {
        period = lcm(period, l.modulus);
        lits_q.push_back(Qff::literal(l));
      }
      const Qff g = Qff::conjunction(std::move(lits_q));
      std::vector<Qff> options;
      std::size_t literals = 0;
      bool solved = false;
      for (Integer j = 0; j < period && !solved; ++j) {
        Qff inst = g.substitute(x, LinearTerm(j));
        if (inst.is_true()) solved = true;
        literals += inst.literal_count();
        check_cap(literals, opts);
        options.push_back(std::move(inst));
      }
      rest.push_back(solved ? Qff::truth() : Qff::disjunction(std::move(options)));
    }
    return Qff::conjunction(std::move(rest));
  }

  Bounds b = collect_bounds(x, with_x);
  const bool use_b = b.b_set.size() <= b.a_set.size();
  std::vector<Qff> parts;
  for (const auto& l : with_x) parts.push_back(Qff::literal(l));
  const Qff body = Qff::conjunction(std::move(parts));
  const bool blocked = use_b ? b.has_lower : b.has_upper;
  const Qff inf = blocked ? Qff::falsity() : at_infinity(x, body, use_b);
  rest.push_back(expand(x, body, inf, use_b ? b.b_set : b.a_set, b.period, use_b, opts));
  return Qff::conjunction(std::move(rest));
}

}  // namespace

Qff eliminate_exists(const std::string& x, const Qff& body, const QeOptions& opts) {
  std::set<std::string> vars;
  body.collect_vars(vars);
  if (!vars.count(x)) return body;
  Integer L;
  const Qff unit = unit_coefficients(x, body, L);
  if (auto dnf = unit.dnf(opts.dnf_cap)) {
    std::vector<Qff> parts;
    std::size_t literals = 0;
    for (const auto& conj : *dnf) {
      Qff r = conjunct_path(x, conj, opts);
      if (r.is_true()) return r;
      literals += r.literal_count();
      check_cap(literals, opts);
      parts.push_back(std::move(r));
    }
    return Qff::disjunction(std::move(parts));
  }
  return tree_path(x, unit, opts);
}

namespace {

Qff qe(const Formula& f, bool positive, const QeOptions& opts) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Lt:
    case K::Eq:
    case K::Divides:
      return positive ? Qff::from_formula(f) : Qff::from_formula(f).negated();
    case K::Not:
      return qe(f.operand(), !positive, opts);
    case K::And:
    case K::Or: {
      std::vector<Qff> parts{qe(f.left(), positive, opts), qe(f.right(), positive, opts)};
      const bool conj = (f.kind() == K::And) == positive;
      return conj ? Qff::conjunction(std::move(parts)) : Qff::disjunction(std::move(parts));
    }
    case K::Implies: {
      std::vector<Qff> parts{qe(f.left(), !positive, opts), qe(f.right(), positive, opts)};
      return positive ? Qff::disjunction(std::move(parts)) : Qff::conjunction(std::move(parts));
    }
    case K::Exists: {
      Qff r = eliminate_exists(f.bound_var(), qe(f.body(), true, opts), opts);
      return positive ? r : r.negated();
    }
    case K::Forall: {
      Qff r = eliminate_exists(f.bound_var(), qe(f.body(), false, opts), opts);
      return positive ? r.negated() : r;
    }
  }
  return Qff::truth();
}

}  // namespace

Qff cooper_qe(const Formula& f, const QeOptions& opts) {
  check_signature(f, Signature::Presburger);
  return qe(f, true, opts);
}

bool decide_standard(const Formula& sentence, const QeOptions& opts) {
  if (!sentence.free_vars().empty()) {
    throw DomainError("decide_standard needs a sentence; free variable '" + sentence.free_vars().front() + "'");
  }
  return cooper_qe(sentence, opts).eval({});
}

}  // namespace saturator

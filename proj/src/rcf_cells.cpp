// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <functional>
#include <set>

#include "rcf_internal.hpp"
#include "saturator/errors.hpp"
#include "saturator/rcf.hpp"

namespace saturator {

namespace {

using detail::MPoly;

class AtomContext {
 public:
  AtomContext(const std::string& var, const RealAssignment& params) : var_(var) {
    names_.push_back(var);
    for (const auto& [name, value] : params) {
      if (name == var) continue;
      if (value.is_rational()) {
        rational_[name] = *value.rational();
      } else {
        index_[name] = names_.size();
        names_.push_back(name);
        algebraic_.push_back(value);
      }
    }
  }

  MPoly build(const Term& t) const {
    const std::size_t n = names_.size();
    switch (t.kind()) {
      case Term::Kind::Var: {
        if (t.name() == var_) return MPoly::variable(n, 0);
        if (auto it = rational_.find(t.name()); it != rational_.end()) return MPoly::constant(n, it->second);
        if (auto it = index_.find(t.name()); it != index_.end()) return MPoly::variable(n, it->second);
        throw DomainError("unassigned parameter " + t.name());
      }
      case Term::Kind::Const:
        return MPoly::constant(n, Rational(t.value()));
      case Term::Kind::Add:
      case Term::Kind::Sub: {
        MPoly r = build(t.lhs());
        r.add(build(t.rhs()), t.kind() == Term::Kind::Add ? 1 : -1);
        return r;
      }
      case Term::Kind::Neg: {
        MPoly r = MPoly::constant(n, 0);
        r.add(build(t.lhs()), -1);
        return r;
      }
      case Term::Kind::Scale: {
        MPoly r = MPoly::constant(n, 0);
        r.add(build(t.lhs()), Rational(t.value()));
        return r;
      }
      case Term::Kind::Mul:
        return build(t.lhs()) * build(t.rhs());
    }
    return MPoly::constant(n, 0);
  }

  // A non-zero polynomial in var whose roots include every root of P(var, params), or
  // nullopt when P(var, params) has constant sign.
  std::optional<UPoly> root_carrier(const MPoly& p) const {
    const int dv = p.degree_in(0);
    if (dv <= 0) return std::nullopt;
    if (algebraic_.empty()) {
      std::vector<Rational> cs(static_cast<std::size_t>(dv) + 1);
      for (const auto& [e, c] : p.terms) cs[static_cast<std::size_t>(e[0])] += c;
      return UPoly(std::move(cs));
    }
    // Constant in var once the parameters are plugged in?
    std::vector<RealAlgebraic> point{RealAlgebraic(0)};
    point.insert(point.end(), algebraic_.begin(), algebraic_.end());
    bool varies = false;
    for (int j = 1; j <= dv && !varies; ++j) {
      MPoly coeff = MPoly::constant(p.nvars, 0);
      for (const auto& [e, c] : p.terms) {
        if (e[0] != j) continue;
        std::vector<int> f = e;
        f[0] = 0;
        coeff.terms[f] = c;
      }
      varies = detail::sign_at(coeff, point) != 0;
    }
    if (!varies) return std::nullopt;
    UPoly n = norm(p);
    if (n.is_zero()) throw Unsupported("atom norm over the algebraic parameters vanishes");
    return n;
  }

 private:
  // Norm of P over Q(params)[var]: determinant of multiplication by P on
  // Q[var][y_1..y_m] / (f_1(y_1), ..., f_m(y_m)).
  UPoly norm(const MPoly& p) const {
    const std::size_t m = algebraic_.size();
    std::vector<UPoly> defs;
    std::vector<int> dims;
    std::size_t dim = 1;
    for (const auto& a : algebraic_) {
      defs.push_back(a.poly().monic());
      dims.push_back(defs.back().degree());
      dim *= static_cast<std::size_t>(dims.back());
    }
    // reduce[i][e] = y_i^e mod f_i.
    std::vector<std::vector<std::vector<Rational>>> reduce(m);
    for (std::size_t i = 0; i < m; ++i) {
      const int need = p.degree_in(i + 1) + dims[i];
      const int d = dims[i];
      std::vector<Rational> cur(static_cast<std::size_t>(d));
      cur[0] = 1;
      for (int e = 0; e <= need; ++e) {
        reduce[i].push_back(cur);
        // Multiply by y and reduce.
        std::vector<Rational> next(static_cast<std::size_t>(d));
        const Rational top = cur[static_cast<std::size_t>(d - 1)];
        for (int s = d - 1; s >= 1; --s) next[static_cast<std::size_t>(s)] = cur[static_cast<std::size_t>(s - 1)];
        for (int s = 0; s < d; ++s) next[static_cast<std::size_t>(s)] -= top * defs[i].coeff(static_cast<std::size_t>(s));
        cur = std::move(next);
      }
    }
    auto digits = [&](std::size_t idx) {
      std::vector<int> out(m);
      for (std::size_t i = m; i-- > 0;) {
        out[i] = static_cast<int>(idx % static_cast<std::size_t>(dims[i]));
        idx /= static_cast<std::size_t>(dims[i]);
      }
      return out;
    };
    std::vector<std::vector<UPoly>> mat(dim, std::vector<UPoly>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
      const std::vector<int> beta = digits(col);
      for (const auto& [e, c] : p.terms) {
        std::vector<Rational> vpow(static_cast<std::size_t>(e[0]) + 1);
        vpow.back() = c;
        const UPoly mono(std::move(vpow));
        for (std::size_t row = 0; row < dim; ++row) {
          const std::vector<int> r = digits(row);
          Rational w = 1;
          for (std::size_t i = 0; i < m && w != 0; ++i) {
            w *= reduce[i][static_cast<std::size_t>(e[i + 1] + beta[i])][static_cast<std::size_t>(r[i])];
          }
          if (w != 0) mat[row][col] = mat[row][col] + mono.scaled(w);
        }
      }
    }
    // Fraction-free elimination over Q[var].
    int sign = 1;
    UPoly prev = UPoly::constant(1);
    for (std::size_t k = 0; k < dim; ++k) {
      if (mat[k][k].is_zero()) {
        std::size_t r = k + 1;
        while (r < dim && mat[r][k].is_zero()) ++r;
        if (r == dim) return UPoly();
        std::swap(mat[k], mat[r]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < dim; ++i) {
        for (std::size_t j = k + 1; j < dim; ++j) {
          mat[i][j] = UPoly::divmod(mat[k][k] * mat[i][j] - mat[i][k] * mat[k][j], prev).first;
        }
        mat[i][k] = UPoly();
      }
      prev = mat[k][k];
    }
    return sign > 0 ? mat[dim - 1][dim - 1] : -mat[dim - 1][dim - 1];
  }

  std::string var_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, Rational> rational_;
  std::vector<RealAlgebraic> algebraic_;
};

void collect_atoms(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case Formula::Kind::Lt:
    case Formula::Kind::Eq:
      out.push_back(f);
      return;
    case Formula::Kind::Divides:
      throw SignatureError("divisibility predicates are not part of the ordered-ring language");
    case Formula::Kind::Not:
      collect_atoms(f.operand(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_atoms(f.left(), out);
      collect_atoms(f.right(), out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      throw Unsupported("decompose requires a quantifier-free formula");
  }
}

Rational upper_rational(const RealAlgebraic& x) { return x.is_rational() ? *x.rational() : x.hi(); }
Rational lower_rational(const RealAlgebraic& x) { return x.is_rational() ? *x.rational() : x.lo(); }

}  // namespace

bool Cell::contains(const RealAlgebraic& x) const {
  if (kind == Kind::Point) return compare(x, *lo) == 0;
  return (!lo || compare(*lo, x) < 0) && (!hi || compare(x, *hi) < 0);
}

bool CellDecomposition::value_at(const RealAlgebraic& x) const {
  for (const auto& c : cells) {
    if (c.contains(x)) return c.value;
  }
  throw ConsistencyViolation("cells do not cover the line");
}

std::vector<RealAlgebraic> CellDecomposition::points() const {
  std::vector<RealAlgebraic> out;
  for (const auto& c : cells) {
    if (c.kind == Cell::Kind::Point) out.push_back(*c.lo);
  }
  return out;
}

CellDecomposition decompose(const Formula& f, const std::string& var, const RealAssignment& params) {
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  const AtomContext ctx(var, params);
  // Pairwise coprime square-free factors of the atoms' carriers.
  std::vector<UPoly> basis;
  for (const auto& atom : atoms) {
    MPoly p = ctx.build(atom.lhs_term());
    p.add(ctx.build(atom.rhs_term()), -1);
    auto carrier = ctx.root_carrier(p);
    if (!carrier) continue;
    UPoly u = carrier->square_free();
    std::vector<UPoly> shared;
    for (auto& b : basis) {
      const UPoly g = UPoly::gcd(b, u);
      if (g.degree() < 1) continue;
      b = UPoly::divmod(b, g).first;
      u = UPoly::divmod(u, g).first;
      shared.push_back(g);
    }
    if (u.degree() >= 1) basis.push_back(u);
    basis.insert(basis.end(), shared.begin(), shared.end());
    basis.erase(std::remove_if(basis.begin(), basis.end(), [](const UPoly& b) { return b.degree() < 1; }),
                basis.end());
  }
  std::vector<RealAlgebraic> points;
  for (const auto& b : basis) {
    for (auto& r : sturm_isolate(b)) points.push_back(std::move(r));
  }
  std::sort(points.begin(), points.end(), [](const RealAlgebraic& x, const RealAlgebraic& y) { return x < y; });

  RealAssignment at = params;
  auto label = [&](const RealAlgebraic& x) {
    at.insert_or_assign(var, x);
    return evaluate(f, at);
  };
  std::vector<Cell> raw;
  for (std::size_t i = 0; i <= points.size(); ++i) {
    Cell gap;
    gap.kind = Cell::Kind::Interval;
    if (i > 0) gap.lo = points[i - 1];
    if (i < points.size()) gap.hi = points[i];
    if (points.empty()) {
      gap.sample = Rational(0);
    } else if (i == 0) {
      gap.sample = simplest_between(std::nullopt, lower_rational(points[0]));
    } else if (i == points.size()) {
      gap.sample = simplest_between(upper_rational(points.back()), std::nullopt);
    } else {
      gap.sample = separating_rational(points[i - 1], points[i]);
    }
    gap.value = label(RealAlgebraic(*gap.sample));
    raw.push_back(gap);
    if (i < points.size()) {
      Cell pt;
      pt.kind = Cell::Kind::Point;
      pt.lo = points[i];
      pt.hi = points[i];
      pt.sample = points[i].rational();
      pt.value = label(points[i]);
      raw.push_back(pt);
    }
  }
  CellDecomposition out;
  out.var = var;
  for (auto& c : raw) {
    const std::size_t n = out.cells.size();
    if (c.kind == Cell::Kind::Interval && n >= 2 && out.cells[n - 1].value == c.value &&
        out.cells[n - 2].value == c.value) {
      out.cells.pop_back();
      out.cells.back().hi = c.hi;
      continue;
    }
    out.cells.push_back(std::move(c));
  }
  return out;
}

CutElement::CutElement(ComputableReal real, bool requires_nonstandard)
    : real_(std::move(real)), nonstandard_(requires_nonstandard) {}

int CutElement::compare(const RealAlgebraic& x, const Budget& budget) const {
  auto against = [&](const Rational& q) {
    const CutAnswer a = real_.compare(q, budget);
    if (a == CutAnswer::Equal) throw PromiseViolation("cut element equals the rational " + to_string(q));
    return a == CutAnswer::Above ? 1 : -1;
  };
  RealAlgebraic y = x;
  for (std::size_t k = 0; k <= budget.bisections; ++k) {
    if (y.is_rational()) return against(*y.rational());
    if (against(y.lo()) < 0) return -1;
    if (against(y.hi()) > 0) return 1;
    y = y.refined(1);
  }
  throw PromiseViolation("cut element " + real_.label() + " not separated from " + x.to_string() + " after " +
                         std::to_string(budget.bisections) + " bisections");
}

void CutElement::check_promise(const UPoly& p, const Budget& budget) const {
  if (p.is_zero()) throw PromiseViolation("zero polynomial vanishes everywhere");
  for (const auto& root : sturm_isolate(p)) compare(root, budget);
}

CutElement realize_cut(const std::vector<CutBound>& lower, const std::vector<CutBound>& upper) {
  std::optional<CutBound> lo, hi;
  for (const auto& b : lower) {
    if (!lo) {
      lo = b;
      continue;
    }
    const int c = compare(b.value, lo->value);
    if (c > 0 || (c == 0 && !b.approached)) lo = b;
  }
  for (const auto& b : upper) {
    if (!hi) {
      hi = b;
      continue;
    }
    const int c = compare(b.value, hi->value);
    if (c < 0 || (c == 0 && !b.approached)) hi = b;
  }
  const ComputableReal lambda = ComputableReal::series(10, "factorial");
  if (!lo && !hi) return CutElement(lambda);
  if (lo && hi) {
    const int c = compare(lo->value, hi->value);
    if (c > 0) throw DomainError("crossed bounds: " + lo->value.to_string() + " > " + hi->value.to_string());
    if (c == 0) {
      if (lo->approached && hi->approached) {
        throw PreconditionViolation("the cut is realized by " + lo->value.to_string() + "; no new element needed");
      }
      if (!lo->approached && !hi->approached) {
        throw DomainError("crossed bounds: " + lo->value.to_string() + " is both a lower and an upper bound");
      }
      // Infinitely close to a point from one side: only a nonstandard frame has it.
      const RealAlgebraic x = lo->value.refined_to(Rational(1, 1 << 20));
      const Rational eps(1, 1 << 20);
      if (!lo->approached) {
        return CutElement(ComputableReal::rational(upper_rational(x)) + lambda.scaled(eps), true);
      }
      return CutElement(ComputableReal::rational(lower_rational(x)) - lambda.scaled(eps), true);
    }
    const Rational a = upper_rational(lo->value.refined(8));
    const Rational b = lower_rational(hi->value.refined(8));
    Rational x = a, y = b;
    RealAlgebraic l = lo->value, h = hi->value;
    while (!(x < y)) {
      l = l.refined(1);
      h = h.refined(1);
      x = upper_rational(l);
      y = lower_rational(h);
    }
    // Strictly inside (x, y): x + (y - x) * lambda with 0 < lambda < 1/5.
    return CutElement(lambda.scaled(y - x) + ComputableReal::rational(x));
  }
  if (lo) return CutElement(ComputableReal::rational(upper_rational(lo->value) + 1) + lambda, true);
  return CutElement(ComputableReal::rational(lower_rational(hi->value) - 1) - lambda, true);
}

CutElement realize_cut(const std::vector<RealAlgebraic>& lower, const std::vector<RealAlgebraic>& upper) {
  std::vector<CutBound> lo, hi;
  for (const auto& x : lower) lo.push_back({x, false});
  for (const auto& x : upper) hi.push_back({x, false});
  return realize_cut(lo, hi);
}

}  // namespace saturator

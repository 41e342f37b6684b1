// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "rcf_internal.hpp"
#include "saturator/errors.hpp"

namespace saturator::detail {

MPoly MPoly::constant(std::size_t n, const Rational& c) {
  MPoly p;
  p.nvars = n;
  if (c != 0) p.terms[std::vector<int>(n, 0)] = c;
  return p;
}

MPoly MPoly::variable(std::size_t n, std::size_t i) {
  MPoly p;
  p.nvars = n;
  std::vector<int> e(n, 0);
  e[i] = 1;
  p.terms[e] = 1;
  return p;
}

void MPoly::add(const MPoly& o, const Rational& k) {
  for (const auto& [e, c] : o.terms) {
    Rational& slot = terms[e];
    slot += c * k;
    if (slot == 0) terms.erase(e);
  }
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r;
  r.nvars = nvars;
  for (const auto& [e1, c1] : terms) {
    for (const auto& [e2, c2] : o.terms) {
      std::vector<int> e(nvars);
      for (std::size_t i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
      Rational& slot = r.terms[e];
      slot += c1 * c2;
      if (slot == 0) r.terms.erase(e);
    }
  }
  return r;
}

int MPoly::degree_in(std::size_t i) const {
  int d = -1;
  for (const auto& [e, c] : terms) d = std::max(d, e[i]);
  return d;
}

MPoly to_mpoly(const Term& t, const std::map<std::string, std::size_t>& index, std::size_t n) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = index.find(t.name());
      if (it == index.end()) throw DomainError("unassigned variable " + t.name());
      return MPoly::variable(n, it->second);
    }
    case Term::Kind::Const:
      return MPoly::constant(n, Rational(t.value()));
    case Term::Kind::Add:
    case Term::Kind::Sub: {
      MPoly r = to_mpoly(t.lhs(), index, n);
      r.add(to_mpoly(t.rhs(), index, n), t.kind() == Term::Kind::Add ? 1 : -1);
      return r;
    }
    case Term::Kind::Neg: {
      MPoly r = MPoly::constant(n, 0);
      r.add(to_mpoly(t.lhs(), index, n), -1);
      return r;
    }
    case Term::Kind::Scale: {
      MPoly r = MPoly::constant(n, 0);
      r.add(to_mpoly(t.lhs(), index, n), Rational(t.value()));
      return r;
    }
    case Term::Kind::Mul:
      return to_mpoly(t.lhs(), index, n) * to_mpoly(t.rhs(), index, n);
  }
  return MPoly::constant(n, 0);
}

namespace {

struct Box {
  Rational lo, hi;
};

Box mul(const Box& a, const Box& b) {
  const Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Box hull(const RealAlgebraic& x) {
  if (x.is_rational()) return {*x.rational(), *x.rational()};
  return {x.lo(), x.hi()};
}

// Closed interval containing p over the product of the coordinate hulls.
Box enclose(const MPoly& p, const std::vector<RealAlgebraic>& point) {
  Box total{0, 0};
  for (const auto& [e, c] : p.terms) {
    Box m{c, c};
    for (std::size_t i = 0; i < e.size(); ++i) {
      const Box h = hull(point[i]);
      for (int k = 0; k < e[i]; ++k) m = mul(m, h);
    }
    total.lo += m.lo;
    total.hi += m.hi;
  }
  return total;
}

// Minimal annihilator of p(y_1, ..., y_m) in Q[y] / (f_1(y_1), ..., f_m(y_m)).
UPoly annihilator(const MPoly& p, const std::vector<UPoly>& defs) {
  const std::size_t m = defs.size();
  std::vector<int> dims;
  std::size_t dim = 1;
  for (const auto& f : defs) {
    dims.push_back(f.degree());
    dim *= static_cast<std::size_t>(f.degree());
  }
  auto digits = [&](std::size_t idx) {
    std::vector<int> out(m);
    for (std::size_t i = m; i-- > 0;) {
      out[i] = static_cast<int>(idx % static_cast<std::size_t>(dims[i]));
      idx /= static_cast<std::size_t>(dims[i]);
    }
    return out;
  };
  // reduce[i][e] = y_i^e mod f_i.
  std::vector<std::vector<std::vector<Rational>>> reduce(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int d = dims[i];
    const int need = p.degree_in(i) + d;
    std::vector<Rational> cur(static_cast<std::size_t>(d));
    cur[0] = 1;
    for (int e = 0; e <= need; ++e) {
      reduce[i].push_back(cur);
      std::vector<Rational> next(static_cast<std::size_t>(d));
      const Rational top = cur[static_cast<std::size_t>(d - 1)];
      for (int s = d - 1; s >= 1; --s) next[static_cast<std::size_t>(s)] = cur[static_cast<std::size_t>(s - 1)];
      for (int s = 0; s < d; ++s) next[static_cast<std::size_t>(s)] -= top * defs[i].coeff(static_cast<std::size_t>(s));
      cur = std::move(next);
    }
  }
  // Multiplication-by-p matrix.
  std::vector<std::vector<Rational>> mat(dim, std::vector<Rational>(dim));
  std::vector<std::vector<int>> basis;
  for (std::size_t i = 0; i < dim; ++i) basis.push_back(digits(i));
  for (std::size_t col = 0; col < dim; ++col) {
    for (const auto& [e, c] : p.terms) {
      for (std::size_t row = 0; row < dim; ++row) {
        Rational w = c;
        for (std::size_t i = 0; i < m && w != 0; ++i) {
          w *= reduce[i][static_cast<std::size_t>(e[i] + basis[col][i])][static_cast<std::size_t>(basis[row][i])];
        }
        if (w != 0) mat[row][col] += w;
      }
    }
  }
  struct Row {
    std::size_t pivot;
    std::vector<Rational> v;
    std::vector<Rational> combo;
  };
  std::vector<Row> rows;
  std::vector<Rational> power(dim);
  power[0] = 1;
  for (std::size_t k = 0; k <= dim; ++k) {
    std::vector<Rational> w = power;
    std::vector<Rational> combo(k + 1);
    combo[k] = 1;
    for (const auto& r : rows) {
      if (w[r.pivot] == 0) continue;
      const Rational f = w[r.pivot] / r.v[r.pivot];
      for (std::size_t i = 0; i < dim; ++i) {
        if (r.v[i] != 0) w[i] -= f * r.v[i];
      }
      for (std::size_t i = 0; i < r.combo.size(); ++i) combo[i] -= f * r.combo[i];
    }
    auto nz = std::find_if(w.begin(), w.end(), [](const Rational& x) { return x != 0; });
    if (nz == w.end()) return UPoly(std::move(combo));
    rows.push_back({static_cast<std::size_t>(nz - w.begin()), std::move(w), std::move(combo)});
    std::vector<Rational> next(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        if (mat[r][c] != 0 && power[c] != 0) next[r] += mat[r][c] * power[c];
      }
    }
    power = std::move(next);
  }
  throw ConsistencyViolation("no linear dependency found among powers");
}

}  // namespace

int sign_at(const MPoly& p, const std::vector<RealAlgebraic>& point) {
  // Substitute rational coordinates; keep the algebraic ones.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!point[i].is_rational() && p.degree_in(i) > 0) keep.push_back(i);
  }
  MPoly q = MPoly::constant(keep.size(), 0);
  for (const auto& [e, c] : p.terms) {
    Rational w = c;
    std::vector<int> f(keep.size());
    for (std::size_t i = 0, j = 0; i < e.size(); ++i) {
      if (j < keep.size() && keep[j] == i) {
        f[j++] = e[i];
      } else if (e[i] > 0) {
        Rational x = *point[i].rational(), pw = 1;
        for (int k = 0; k < e[i]; ++k) pw *= x;
        w *= pw;
      }
    }
    MPoly mono;
    mono.nvars = keep.size();
    if (w != 0) mono.terms[f] = w;
    q.add(mono, 1);
  }
  if (q.terms.empty()) return 0;
  if (keep.empty()) return sgn(q.terms.begin()->second);
  std::vector<RealAlgebraic> coords;
  for (auto i : keep) coords.push_back(point[i]);
  if (keep.size() == 1) {
    std::vector<Rational> cs(static_cast<std::size_t>(q.degree_in(0)) + 1);
    for (const auto& [e, c] : q.terms) cs[static_cast<std::size_t>(e[0])] += c;
    return coords[0].sign_of(UPoly(std::move(cs)));
  }
  auto refine_all = [&] {
    for (auto& x : coords) x = x.refined(1);
  };
  for (int round = 0; round < 16; ++round) {
    const Box b = enclose(q, coords);
    if (b.lo > 0) return 1;
    if (b.hi < 0) return -1;
    refine_all();
  }
  std::vector<UPoly> defs;
  for (const auto& x : coords) defs.push_back(x.poly().monic());
  const UPoly a = annihilator(q, defs).square_free();
  const bool zero_is_root = a.sign_at(0) == 0;
  const auto seq = sturm_sequence(a);
  while (true) {
    for (const auto& x : coords) {
      // A coordinate turned exact: retry with it substituted.
      if (x.is_rational()) {
        std::vector<RealAlgebraic> full = point;
        for (std::size_t j = 0; j < keep.size(); ++j) full[keep[j]] = coords[j];
        return sign_at(p, full);
      }
    }
    const Box b = enclose(q, coords);
    if (b.lo > 0) return 1;
    if (b.hi < 0) return -1;
    if (zero_is_root && b.lo < b.hi && a.sign_at(b.lo) != 0 && a.sign_at(b.hi) != 0 &&
        sturm_count(seq, b.lo, b.hi) == 1) {
      return 0;
    }
    refine_all();
  }
}

}  // namespace saturator::detail

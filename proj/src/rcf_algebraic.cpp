// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>

#include "rcf_internal.hpp"
#include "saturator/errors.hpp"
#include "saturator/rcf.hpp"

namespace saturator {

RealAlgebraic::RealAlgebraic(const Rational& q)
    : poly_(std::vector<Rational>{-q, 1}), lo_(q - 1), hi_(q + 1), exact_(q) {}

RealAlgebraic::RealAlgebraic(const UPoly& p, const Rational& lo, const Rational& hi) {
  if (p.degree() < 1) throw DomainError("defining polynomial must have positive degree");
  if (!(lo < hi)) throw DomainError("isolating interval must have lo < hi");
  poly_ = p.square_free();
  lo_ = lo;
  hi_ = hi;
  if (poly_.sign_at(lo) == 0 || poly_.sign_at(hi) == 0) throw DomainError("isolating interval endpoint is a root");
  if (sturm_count(sturm_sequence(poly_), lo, hi) != 1) {
    throw DomainError("interval (" + saturator::to_string(lo) + ", " + saturator::to_string(hi) +
                      ") does not isolate exactly one root of " + poly_.to_list_text());
  }
  if (poly_.degree() == 1) exact_ = -poly_.coeff(0) / poly_.coeff(1);
}

RealAlgebraic RealAlgebraic::sqrt(const Rational& q) {
  if (q < 0) throw DomainError("square root of a negative number");
  if (q == 0) return RealAlgebraic(Rational(0));
  Rational hi = q + 1;
  return RealAlgebraic(UPoly(std::vector<Rational>{-q, 0, 1}), 0, hi);
}

RealAlgebraic RealAlgebraic::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto call = [&](std::string_view name) -> std::optional<std::string_view> {
    if (text.substr(0, name.size()) != name) return std::nullopt;
    std::string_view rest = trim(text.substr(name.size()));
    if (rest.empty() || rest.front() != '(' || rest.back() != ')') throw ParseError("expected '(...)'", name.size());
    return rest.substr(1, rest.size() - 2);
  };
  if (auto arg = call("sqrt")) return sqrt(parse_rational(trim(*arg)));
  if (auto arg = call("root")) {
    const auto close = arg->find(']');
    if (close == std::string_view::npos) throw ParseError("expected coefficient list", 5);
    UPoly p = UPoly::parse(arg->substr(0, close + 1));
    std::string_view rest = trim(arg->substr(close + 1));
    if (rest.empty() || rest.front() != ',') throw ParseError("expected ',' after coefficient list", 5 + close + 1);
    rest.remove_prefix(1);
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected 'lo, hi'", 5 + close + 1);
    return RealAlgebraic(p, parse_rational(trim(rest.substr(0, comma))), parse_rational(trim(rest.substr(comma + 1))));
  }
  return RealAlgebraic(parse_rational(text));
}

RealAlgebraic RealAlgebraic::refined(std::size_t steps) const {
  RealAlgebraic r = *this;
  for (std::size_t i = 0; i < steps && !r.exact_; ++i) {
    const Rational mid = (r.lo_ + r.hi_) / 2;
    const int s = r.poly_.sign_at(mid);
    if (s == 0) {
      const Rational w = (r.hi_ - r.lo_) / 4;
      r = RealAlgebraic(mid);
      r.lo_ = mid - w;
      r.hi_ = mid + w;
      break;
    }
    if (r.poly_.sign_at(r.lo_) == s) {
      r.lo_ = mid;
    } else {
      r.hi_ = mid;
    }
  }
  return r;
}

RealAlgebraic RealAlgebraic::refined_to(const Rational& w) const {
  RealAlgebraic r = *this;
  while (!r.exact_ && r.hi_ - r.lo_ > w) r = r.refined(1);
  return r;
}

int RealAlgebraic::compare(const Rational& q) const {
  if (exact_) return sgn(Rational(*exact_ - q));
  if (q <= lo_) return 1;
  if (q >= hi_) return -1;
  const int s = poly_.sign_at(q);
  if (s == 0) return 0;
  return poly_.sign_at(lo_) == s ? 1 : -1;
}

int RealAlgebraic::sign_of(const UPoly& p) const {
  if (exact_) return p.sign_at(*exact_);
  if (p.is_zero()) return 0;
  const UPoly g = UPoly::gcd(p, poly_);
  if (g.degree() >= 1 && sturm_count(sturm_sequence(g), lo_, hi_) >= 1) return 0;
  const auto seq = sturm_sequence(p.square_free());
  RealAlgebraic r = *this;
  while (!r.exact_ && sturm_count(seq, r.lo_, r.hi_) != 0) r = r.refined(1);
  if (r.exact_) return p.sign_at(*r.exact_);
  return p.sign_at(r.hi_);
}

int compare(const RealAlgebraic& a, const RealAlgebraic& b) {
  if (a.is_rational()) return -b.compare(*a.rational());
  if (b.is_rational()) return a.compare(*b.rational());
  const Rational lo = std::max(a.lo(), b.lo());
  const Rational hi = std::min(a.hi(), b.hi());
  if (lo < hi) {
    const UPoly g = UPoly::gcd(a.poly(), b.poly());
    if (g.degree() >= 1 && sturm_count(sturm_sequence(g), lo, hi) >= 1) return 0;
  }
  RealAlgebraic x = a, y = b;
  while (true) {
    if (x.is_rational()) return -y.compare(*x.rational());
    if (y.is_rational()) return x.compare(*y.rational());
    if (x.hi() <= y.lo()) return -1;
    if (y.hi() <= x.lo()) return 1;
    x = x.refined(1);
    y = y.refined(1);
  }
}

Rational separating_rational(const RealAlgebraic& a, const RealAlgebraic& b) {
  const int c = compare(a, b);
  if (c == 0) throw DomainError("no rational separates equal numbers");
  RealAlgebraic x = c < 0 ? a : b, y = c < 0 ? b : a;
  while (true) {
    const Rational upper = x.is_rational() ? *x.rational() : x.hi();
    const Rational lower = y.is_rational() ? *y.rational() : y.lo();
    if (upper < lower) return simplest_between(upper, lower);
    x = x.refined(1);
    y = y.refined(1);
  }
}

namespace {

// p(x - q).
UPoly shifted(const UPoly& p, const Rational& q) {
  const UPoly lin(std::vector<Rational>{-q, 1});
  UPoly acc;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * lin + UPoly::constant(p.coeffs()[k]);
  return acc;
}

// p(x / q), q != 0.
UPoly dilated(const UPoly& p, const Rational& q) {
  std::vector<Rational> out = p.coeffs();
  Rational f = 1;
  for (auto& c : out) {
    c /= f;
    f *= q;
  }
  return UPoly(std::move(out));
}

// Elements of Q[y, z] / (f(y), g(z)) in the basis y^i z^j, index i * dz + j.
class TensorRing {
 public:
  TensorRing(const UPoly& f, const UPoly& g) : fy_(f.monic()), gz_(g.monic()), dy_(fy_.degree()), dz_(gz_.degree()) {}

  std::size_t dim() const { return static_cast<std::size_t>(dy_ * dz_); }
  std::vector<Rational> one() const {
    std::vector<Rational> v(dim());
    v[0] = 1;
    return v;
  }
  std::vector<Rational> y() const { return monomial(1, 0); }
  std::vector<Rational> z() const { return monomial(0, 1); }

  std::vector<Rational> add(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
    std::vector<Rational> r(dim());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return r;
  }

  std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
    const int ey = 2 * dy_ - 1, ez = 2 * dz_ - 1;
    std::vector<Rational> t(static_cast<std::size_t>(ey * ez));
    for (int i = 0; i < dy_; ++i) {
      for (int j = 0; j < dz_; ++j) {
        const Rational& x = a[i * dz_ + j];
        if (x == 0) continue;
        for (int k = 0; k < dy_; ++k) {
          for (int l = 0; l < dz_; ++l) {
            const Rational& w = b[k * dz_ + l];
            if (w != 0) t[(i + k) * ez + (j + l)] += x * w;
          }
        }
      }
    }
    // Reduce z-degree row by row, then y-degree.
    for (int i = 0; i < ey; ++i) {
      for (int j = ez - 1; j >= dz_; --j) {
        const Rational c = t[i * ez + j];
        if (c == 0) continue;
        t[i * ez + j] = 0;
        for (int s = 0; s < dz_; ++s) t[i * ez + j - dz_ + s] -= c * gz_.coeff(s);
      }
    }
    for (int i = ey - 1; i >= dy_; --i) {
      for (int j = 0; j < dz_; ++j) {
        const Rational c = t[i * ez + j];
        if (c == 0) continue;
        t[i * ez + j] = 0;
        for (int s = 0; s < dy_; ++s) t[(i - dy_ + s) * ez + j] -= c * fy_.coeff(s);
      }
    }
    std::vector<Rational> r(dim());
    for (int i = 0; i < dy_; ++i) {
      for (int j = 0; j < dz_; ++j) r[i * dz_ + j] = t[i * ez + j];
    }
    return r;
  }

 private:
  std::vector<Rational> monomial(int i, int j) const {
    std::vector<Rational> v(dim());
    if (i < dy_ && j < dz_) {
      v[i * dz_ + j] = 1;
    } else {
      // Degree-1 factor: y (or z) is the constant root.
      Rational c = 1;
      if (i >= dy_) c *= -fy_.coeff(0);
      if (j >= dz_) c *= -gz_.coeff(0);
      v[std::min(i, dy_ - 1) * dz_ + std::min(j, dz_ - 1)] = c;
    }
    return v;
  }

  UPoly fy_, gz_;
  int dy_, dz_;
};

// Minimal dependency among 1, g, g^2, ... in the ring: an annihilating polynomial of g.
UPoly annihilator(const TensorRing& ring, const std::vector<Rational>& g) {
  struct Row {
    std::size_t pivot;
    std::vector<Rational> v;
    std::vector<Rational> combo;
  };
  std::vector<Row> rows;
  std::vector<Rational> power = ring.one();
  for (std::size_t k = 0; k <= ring.dim(); ++k) {
    std::vector<Rational> w = power;
    std::vector<Rational> combo(k + 1);
    combo[k] = 1;
    for (const auto& r : rows) {
      if (w[r.pivot] == 0) continue;
      const Rational f = w[r.pivot] / r.v[r.pivot];
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (r.v[i] != 0) w[i] -= f * r.v[i];
      }
      for (std::size_t i = 0; i < r.combo.size(); ++i) combo[i] -= f * r.combo[i];
    }
    auto nz = std::find_if(w.begin(), w.end(), [](const Rational& x) { return x != 0; });
    if (nz == w.end()) return UPoly(std::move(combo));
    rows.push_back({static_cast<std::size_t>(nz - w.begin()), std::move(w), std::move(combo)});
    power = ring.mul(power, g);
  }
  throw ConsistencyViolation("no linear dependency found among powers");
}

struct Interval {
  Rational lo, hi;
};

// The rational root of f in (lo, hi), if the root there is rational.  Rational roots
// have denominators dividing the integer leading coefficient L, so two of them are at
// least 1/L^2 apart.
std::optional<Rational> rational_root_in(const UPoly& f, Rational lo, Rational hi) {
  Integer den = 1;
  for (const auto& c : f.coeffs()) den = lcm(den, Integer(c.get_den()));
  Integer lead = Integer(f.lead() * den);
  if (lead < 0) lead = -lead;
  const Rational width(1, lead * lead);
  const int slo = f.sign_at(lo);
  while (hi - lo >= width) {
    const Rational mid = (lo + hi) / 2;
    const int s = f.sign_at(mid);
    if (s == 0) return mid;
    (s == slo ? lo : hi) = mid;
  }
  const Rational r = simplest_between(lo, hi);
  if (f.sign_at(r) == 0) return r;
  return std::nullopt;
}

Interval bounds(const RealAlgebraic& a) {
  if (a.is_rational()) return {*a.rational(), *a.rational()};
  return {a.lo(), a.hi()};
}

}  // namespace

RealAlgebraic RealAlgebraic::operator-() const {
  if (exact_) return RealAlgebraic(Rational(-*exact_));
  RealAlgebraic r = *this;
  r.poly_ = poly_.reflected().monic();
  r.lo_ = -hi_;
  r.hi_ = -lo_;
  return r;
}

RealAlgebraic RealAlgebraic::reciprocal() const {
  if (exact_) {
    if (*exact_ == 0) throw DomainError("reciprocal of zero");
    return RealAlgebraic(Rational(1 / *exact_));
  }
  if (sign() == 0) throw DomainError("reciprocal of zero");
  RealAlgebraic r = *this;
  while (!r.exact_ && r.lo_ <= 0 && r.hi_ >= 0) r = r.refined(1);
  if (r.exact_) return RealAlgebraic(Rational(1 / *r.exact_));
  return RealAlgebraic(r.poly_.reversed(), 1 / r.hi_, 1 / r.lo_);
}

RealAlgebraic RealAlgebraic::select_root(const UPoly& annihilator_poly, RealAlgebraic a, RealAlgebraic b, Op op) {
  const UPoly f = annihilator_poly.square_free();
  if (f.degree() == 1) return RealAlgebraic(Rational(-f.coeff(0) / f.coeff(1)));
  const auto seq = sturm_sequence(f);
  while (true) {
    if (a.exact_ || b.exact_) return combine(a, b, op);
    const Interval x = bounds(a), y = bounds(b);
    Rational lo, hi;
    if (op == Op::Add) {
      lo = x.lo + y.lo;
      hi = x.hi + y.hi;
    } else {
      const Rational c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
      lo = *std::min_element(c, c + 4);
      hi = *std::max_element(c, c + 4);
    }
    if (lo < hi && f.sign_at(lo) != 0 && f.sign_at(hi) != 0 && sturm_count(seq, lo, hi) == 1) {
      if (auto r = rational_root_in(f, lo, hi)) return RealAlgebraic(*r);
      return RealAlgebraic(f, lo, hi);
    }
    a = a.refined(1);
    b = b.refined(1);
  }
}

RealAlgebraic RealAlgebraic::combine(const RealAlgebraic& a, const RealAlgebraic& b, Op op) {
  if (op == Op::Sub) return combine(a, -b, Op::Add);
  if (a.exact_ && b.exact_) return RealAlgebraic(op == Op::Add ? Rational(*a.exact_ + *b.exact_) : Rational(*a.exact_ * *b.exact_));
  if (a.exact_) return combine(b, a, op);
  if (b.exact_) {
    const Rational& q = *b.exact_;
    if (op == Op::Add) {
      RealAlgebraic r = a;
      r.poly_ = shifted(a.poly_, q).monic();
      r.lo_ = a.lo_ + q;
      r.hi_ = a.hi_ + q;
      return r;
    }
    if (q == 0) return RealAlgebraic(Rational(0));
    RealAlgebraic r = a;
    r.poly_ = dilated(a.poly_, q).monic();
    r.lo_ = q > 0 ? Rational(a.lo_ * q) : Rational(a.hi_ * q);
    r.hi_ = q > 0 ? Rational(a.hi_ * q) : Rational(a.lo_ * q);
    return r;
  }
  const TensorRing ring(a.poly_, b.poly_);
  const auto g = op == Op::Add ? ring.add(ring.y(), ring.z()) : ring.mul(ring.y(), ring.z());
  return select_root(annihilator(ring, g), a, b, op);
}

RealAlgebraic RealAlgebraic::operator+(const RealAlgebraic& o) const { return combine(*this, o, Op::Add); }
RealAlgebraic RealAlgebraic::operator-(const RealAlgebraic& o) const { return combine(*this, o, Op::Sub); }
RealAlgebraic RealAlgebraic::operator*(const RealAlgebraic& o) const { return combine(*this, o, Op::Mul); }
RealAlgebraic RealAlgebraic::operator/(const RealAlgebraic& o) const { return *this * o.reciprocal(); }

std::string RealAlgebraic::to_string() const {
  if (exact_) return saturator::to_string(*exact_);
  return "root(" + poly_.to_list_text() + ", " + saturator::to_string(lo_) + ", " + saturator::to_string(hi_) + ")";
}

std::string RealAlgebraic::to_json_text() const {
  return "{\"hi\":\"" + saturator::to_string(hi_) + "\",\"lo\":\"" + saturator::to_string(lo_) + "\",\"poly\":\"" +
         poly_.to_list_text() + "\"}";
}

RealAlgebraic evaluate(const Term& t, const RealAssignment& values) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = values.find(t.name());
      if (it == values.end()) throw DomainError("unassigned variable " + t.name());
      return it->second;
    }
    case Term::Kind::Const:
      return RealAlgebraic(t.value());
    case Term::Kind::Add:
      return evaluate(t.lhs(), values) + evaluate(t.rhs(), values);
    case Term::Kind::Sub:
      return evaluate(t.lhs(), values) - evaluate(t.rhs(), values);
    case Term::Kind::Neg:
      return -evaluate(t.lhs(), values);
    case Term::Kind::Scale:
      return evaluate(t.lhs(), values) * RealAlgebraic(t.value());
    case Term::Kind::Mul:
      return evaluate(t.lhs(), values) * evaluate(t.rhs(), values);
  }
  return RealAlgebraic();
}

namespace {

int atom_sign(const Formula& atom, const RealAssignment& values) {
  std::map<std::string, std::size_t> index;
  std::vector<RealAlgebraic> point;
  for (const auto& name : atom.free_vars()) {
    auto it = values.find(name);
    if (it == values.end()) throw DomainError("unassigned variable " + name);
    index.emplace(name, point.size());
    point.push_back(it->second);
  }
  detail::MPoly p = detail::to_mpoly(atom.lhs_term(), index, point.size());
  p.add(detail::to_mpoly(atom.rhs_term(), index, point.size()), -1);
  return detail::sign_at(p, point);
}

}  // namespace

bool evaluate(const Formula& f, const RealAssignment& values) {
  switch (f.kind()) {
    case Formula::Kind::Lt:
      return atom_sign(f, values) < 0;
    case Formula::Kind::Eq:
      return atom_sign(f, values) == 0;
    case Formula::Kind::Divides:
      throw SignatureError("divisibility predicates are not part of the ordered-ring language");
    case Formula::Kind::Not:
      return !evaluate(f.operand(), values);
    case Formula::Kind::And:
      return evaluate(f.left(), values) && evaluate(f.right(), values);
    case Formula::Kind::Or:
      return evaluate(f.left(), values) || evaluate(f.right(), values);
    case Formula::Kind::Implies:
      return !evaluate(f.left(), values) || evaluate(f.right(), values);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      throw Unsupported("quantified formula in pointwise evaluation");
  }
  return false;
}

}  // namespace saturator

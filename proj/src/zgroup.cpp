// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "saturator/errors.hpp"
#include "saturator/zgroup.hpp"
#include "zgroup_internal.hpp"

namespace saturator {

namespace {

std::size_t quantifier_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Not:
      return quantifier_depth(f.operand());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return std::max(quantifier_depth(f.left()), quantifier_depth(f.right()));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return 1 + quantifier_depth(f.body());
    default:
      return 0;
  }
}

ModelElement reduced(Integer r, std::vector<Integer> t, Integer m) {
  if (m == 0) throw DomainError("element divisor must be nonzero");
  if (m < 0) {
    m = -m;
    r = -r;
    for (auto& x : t) x = -x;
  }
  while (!t.empty() && t.back() == 0) t.pop_back();
  Integer g = gcd(r, m);
  for (const auto& x : t) g = gcd(g, x);
  if (g > 1) {
    r /= g;
    m /= g;
    for (auto& x : t) x /= g;
  }
  return ModelElement{std::move(r), std::move(t), std::move(m)};
}

}  // namespace

bool operator==(const ModelElement& a, const ModelElement& b) {
  if (a.r != b.r || a.m != b.m) return false;
  const std::size_t n = std::max(a.t.size(), b.t.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coefficient(i) != b.coefficient(i)) return false;
  }
  return true;
}

std::string to_string(const ModelElement& x, const std::vector<Generator>& gens) {
  std::string out;
  for (std::size_t i = 0; i < x.t.size(); ++i) {
    const Integer& c = x.t[i];
    if (c == 0) continue;
    const std::string name = i < gens.size() ? gens[i].name : "c" + std::to_string(i + 1);
    const Integer mag = c < 0 ? Integer(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + "*";
    out += name;
  }
  if (x.r != 0 || out.empty()) {
    if (out.empty()) {
      out = to_string(x.r);
    } else {
      out += (x.r < 0 ? " - " : " + ") + to_string(x.r < 0 ? Integer(-x.r) : x.r);
    }
  }
  if (x.m != 1) out = "(" + out + ")/" + to_string(x.m);
  return out;
}

ZModel ZModel::with_generator(Generator g) const {
  if (g.name.empty()) g.name = "c" + std::to_string(gens_.size() + 1);
  for (const auto& h : gens_) {
    if (h.name == g.name) throw DomainError("duplicate generator name " + g.name);
  }
  if (g.position.is_zero()) throw DomainError("generator position must be nonzero");
  for (const auto& [e, c] : g.position.terms()) {
    if (e <= 0) throw DomainError("generator " + g.name + " has a non-positive exponent " + to_string(e));
  }
  if (g.position.leading_coefficient() <= 0) throw DomainError("generator " + g.name + " must be positive");
  ZModel out = *this;
  out.gens_.push_back(std::move(g));
  if (out.class_exponents().size() != out.gens_.size()) {
    throw DomainError("generator " + out.gens_.back().name + " is linearly dependent on 1 and the others");
  }
  return out;
}

ModelElement ZModel::constant(const Integer& n) const { return ModelElement{n, {}, 1}; }

ModelElement ZModel::generator(std::size_t i) const {
  if (i >= gens_.size()) throw DomainError("generator index out of range");
  std::vector<Integer> t(i + 1, 0);
  t[i] = 1;
  return ModelElement{0, std::move(t), 1};
}

ModelElement ZModel::element(Integer r, std::vector<Integer> t, Integer m) const {
  if (t.size() > gens_.size()) {
    for (std::size_t i = gens_.size(); i < t.size(); ++i) {
      if (t[i] != 0) throw DomainError("element refers to a generator outside the model");
    }
  }
  if (m == 0) throw DomainError("element divisor must be nonzero");
  const Integer am = m < 0 ? Integer(-m) : m;
  Integer acc = r;
  for (std::size_t i = 0; i < t.size() && i < gens_.size(); ++i) {
    if (t[i] != 0) acc += t[i] * gens_[i].profile.residue(am);
  }
  if (mod(acc, am) != 0) {
    throw ExactnessError("divisibility certificate fails: combination is " + to_string(mod(acc, am)) + " mod " +
                         to_string(am));
  }
  return reduced(std::move(r), std::move(t), std::move(m));
}

ModelElement ZModel::add(const ModelElement& x, const ModelElement& y) const {
  const std::size_t n = std::max(x.t.size(), y.t.size());
  std::vector<Integer> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = x.coefficient(i) * y.m + y.coefficient(i) * x.m;
  return reduced(x.r * y.m + y.r * x.m, std::move(t), x.m * y.m);
}

ModelElement ZModel::scale(const Integer& k, const ModelElement& x) const {
  std::vector<Integer> t = x.t;
  for (auto& c : t) c *= k;
  return reduced(k * x.r, std::move(t), x.m);
}

ModelElement ZModel::sub(const ModelElement& x, const ModelElement& y) const { return add(x, scale(-1, y)); }

ModelElement ZModel::divide(const ModelElement& x, const Integer& d) const {
  if (d == 0) throw DomainError("division by zero");
  if (residue(x, d < 0 ? Integer(-d) : d) != 0) {
    throw ExactnessError(to_string(x, gens_) + " is not divisible by " + to_string(d));
  }
  return reduced(x.r, x.t, x.m * d);
}

ModelElement ZModel::linear(const LinearTerm& term, const ElementAssignment& values) const {
  ModelElement acc = constant(term.constant());
  for (const auto& [v, c] : term.coeffs()) {
    auto it = values.find(v);
    if (it == values.end()) throw DomainError("unassigned variable " + v);
    acc = add(acc, scale(c, it->second));
  }
  return acc;
}

HahnVector ZModel::position(const ModelElement& x) const {
  if (x.t.size() > gens_.size()) {
    for (std::size_t i = gens_.size(); i < x.t.size(); ++i) {
      if (x.t[i] != 0) throw DomainError("element refers to a generator outside the model");
    }
  }
  HahnVector v = HahnVector::monomial(0, Rational(x.r));
  for (std::size_t i = 0; i < x.t.size() && i < gens_.size(); ++i) {
    if (x.t[i] != 0) v = v + gens_[i].position.scaled(Rational(x.t[i]));
  }
  return v.divided(x.m);
}

int ZModel::eval_atomic(const ModelElement& x, const ModelElement& y) const {
  return saturator::compare(position(x), position(y));
}

int ZModel::sign(const ModelElement& x) const { return position(x).sign(); }

Integer ZModel::residue(const ModelElement& x, const Integer& n) const {
  if (n < 1) throw DomainError("residue modulus must be positive");
  const Integer big = x.m * n;
  Integer acc = x.r;
  for (std::size_t i = 0; i < x.t.size(); ++i) {
    if (x.t[i] == 0) continue;
    if (i >= gens_.size()) throw DomainError("element refers to a generator outside the model");
    acc += x.t[i] * gens_[i].profile.residue(big);
  }
  acc = mod(acc, big);
  if (mod(acc, x.m) != 0) {
    throw ExactnessError("divisibility certificate fails for " + to_string(x, gens_) + " at " + to_string(x.m));
  }
  return acc / x.m;
}

ResidueProfile ZModel::profile_of(const ModelElement& x) const {
  std::vector<std::pair<Integer, ResidueProfile>> terms;
  for (std::size_t i = 0; i < x.t.size(); ++i) {
    if (x.t[i] == 0) continue;
    if (i >= gens_.size()) throw DomainError("element refers to a generator outside the model");
    terms.emplace_back(x.t[i], gens_[i].profile);
  }
  ResidueProfile p = terms.empty() ? ResidueProfile::standard(x.r) : ResidueProfile::combination(x.r, std::move(terms));
  return x.m == 1 ? p : ResidueProfile::quotient(std::move(p), x.m);
}

bool ZModel::eval(const Literal& lit, const ElementAssignment& values) const {
  const ModelElement v = linear(lit.term, values);
  switch (lit.kind) {
    case Literal::Kind::Pos:
      return sign(v) > 0;
    case Literal::Kind::Eq:
      return sign(v) == 0;
    case Literal::Kind::Neq:
      return sign(v) != 0;
    case Literal::Kind::Div:
      return residue(v, lit.modulus) == 0;
    case Literal::Kind::NDiv:
      return residue(v, lit.modulus) != 0;
  }
  return false;
}

bool ZModel::eval(const Qff& q, const ElementAssignment& values) const {
  switch (q.kind()) {
    case Qff::Kind::True:
      return true;
    case Qff::Kind::False:
      return false;
    case Qff::Kind::Lit:
      return eval(q.lit(), values);
    case Qff::Kind::And:
      for (const auto& c : q.children()) {
        if (!eval(c, values)) return false;
      }
      return true;
    case Qff::Kind::Or:
      for (const auto& c : q.children()) {
        if (eval(c, values)) return true;
      }
      return false;
  }
  return false;
}

bool ZModel::decide(const Formula& f, const ElementAssignment& values, const DecideOptions& opts) const {
  for (const auto& v : f.free_vars()) {
    if (!values.count(v)) throw DomainError("free variable " + v + " is not assigned");
  }
  const std::size_t depth = quantifier_depth(f);
  if (depth > opts.max_quantifier_depth) {
    throw Unsupported("quantifier depth " + std::to_string(depth) + " exceeds the cap of " +
                      std::to_string(opts.max_quantifier_depth));
  }
  return eval(cooper_qe(f, opts.qe), values);
}

std::vector<Rational> ZModel::class_exponents() const {
  std::vector<HahnVector> basis;
  for (const auto& g : gens_) {
    HahnVector v = g.position;
    bool reduced_any = true;
    while (!v.is_zero() && reduced_any) {
      reduced_any = false;
      for (const auto& b : basis) {
        if (*b.leading_exponent() == *v.leading_exponent()) {
          v = v - b.scaled(v.leading_coefficient() / b.leading_coefficient());
          reduced_any = true;
          break;
        }
      }
    }
    if (!v.is_zero()) basis.push_back(v);
  }
  std::vector<Rational> out;
  for (const auto& b : basis) out.push_back(*b.leading_exponent());
  std::sort(out.begin(), out.end());
  return out;
}

std::string ZModel::to_json_text() const {
  nlohmann::json j;
  j["v"] = 1;
  j["generators"] = nlohmann::json::array();
  for (const auto& g : gens_) {
    nlohmann::json pos = nlohmann::json::array();
    for (const auto& [e, c] : g.position.terms()) pos.push_back({{"coefficient", to_string(c)}, {"exponent", to_string(e)}});
    j["generators"].push_back({{"name", g.name}, {"position", pos}, {"profile", detail::profile_to_json(g.profile)}});
  }
  return j.dump();
}

ZModel ZModel::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what(), "/");
  }
  if (!j.is_object()) throw SchemaError("model must be an object", "/");
  if (j.contains("v") && j["v"] != 1) throw SchemaError("unsupported schema version", "/v");
  const auto& gs = detail::json_field(j, "generators", "");
  if (!gs.is_array()) throw SchemaError("generators must be an array", "/generators");
  ZModel model;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string at = "/generators/" + std::to_string(i);
    Generator g;
    g.name = detail::json_string(gs[i], "name", at);
    const auto& pos = detail::json_field(gs[i], "position", at);
    if (!pos.is_array()) throw SchemaError("position must be an array", at + "/position");
    for (std::size_t k = 0; k < pos.size(); ++k) {
      const std::string pat = at + "/position/" + std::to_string(k);
      const Rational e = detail::json_rational(pos[k], "exponent", pat);
      if (g.position.coefficient(e) != 0) {
        throw SchemaError("duplicate exponent", pat + "/exponent");
      }
      g.position.set(e, detail::json_rational(pos[k], "coefficient", pat));
    }
    g.profile = detail::profile_from_json(detail::json_field(gs[i], "profile", at), at + "/profile");
    try {
      model = model.with_generator(std::move(g));
    } catch (const DomainError& e) {
      throw SchemaError(e.what(), at);
    }
  }
  return model;
}

}  // namespace saturator

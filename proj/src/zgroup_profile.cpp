// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <mutex>

#include "json.hpp"

#include "saturator/errors.hpp"
#include "saturator/zgroup.hpp"
#include "zgroup_internal.hpp"

namespace saturator {

namespace {

const Integer kFactorialLimit = 10'000'000;

}  // namespace

struct ResidueProfile::Node {
  enum class Kind { Standard, Factorial, Prefix, Combination, Quotient };
  Kind kind = Kind::Standard;
  Integer a = 0;  // standard value, factorial offset, combination constant, quotient divisor
  Integer b = 0;  // factorial scale
  std::vector<DivConstraint> entries;
  Integer witness = 0;
  std::vector<std::pair<Integer, ResidueProfile>> terms;

  mutable std::mutex mu;
  mutable std::map<Integer, Integer> memo;
  mutable std::vector<std::pair<Integer, Integer>> log;

  Integer compute(const Integer& n) const {
    switch (kind) {
      case Kind::Standard:
        return mod(a, n);
      case Kind::Prefix:
        return mod(witness, n);
      case Kind::Factorial: {
        if (n > kFactorialLimit) throw BudgetExhausted("factorial profile modulus too large: " + to_string(n));
        Integer sum = 0, fact = 1;
        for (Integer j = 0; j < n; ++j) {
          if (j > 0) fact = mod(fact * j, n);
          if (fact == 0) break;
          sum += fact;
        }
        return mod(a + b * sum, n);
      }
      case Kind::Combination: {
        Integer acc = a;
        for (const auto& [c, p] : terms) acc += c * p.residue(n);
        return mod(acc, n);
      }
      case Kind::Quotient: {
        const Integer big = terms.at(0).second.residue(a * n);
        if (mod(big, a) != 0) throw ExactnessError("quotient profile is not exact at " + to_string(n));
        return big / a;
      }
    }
    return 0;
  }
};

ResidueProfile::ResidueProfile() : ResidueProfile(standard(0)) {}

ResidueProfile ResidueProfile::standard(Integer value) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Standard;
  n->a = std::move(value);
  return ResidueProfile(std::move(n));
}

ResidueProfile ResidueProfile::factorial(Integer offset, Integer scale) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Factorial;
  n->a = std::move(offset);
  n->b = std::move(scale);
  return ResidueProfile(std::move(n));
}

ResidueProfile ResidueProfile::prefix(std::vector<DivConstraint> residues) {
  for (const auto& c : residues) {
    if (c.modulus < 1) throw DomainError("residue modulus must be positive");
  }
  const CrtResult crt = crt_consistent(residues);
  if (!crt.consistent) {
    const auto& [x, y] = *crt.conflict;
    throw DomainError("inconsistent residues: " + to_string(x.residue) + " mod " + to_string(x.modulus) + " vs " +
                      to_string(y.residue) + " mod " + to_string(y.modulus));
  }
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Prefix;
  n->entries = std::move(residues);
  n->witness = crt.witness;
  return ResidueProfile(std::move(n));
}

ResidueProfile ResidueProfile::combination(Integer constant, std::vector<std::pair<Integer, ResidueProfile>> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Combination;
  n->a = std::move(constant);
  n->terms = std::move(terms);
  return ResidueProfile(std::move(n));
}

ResidueProfile ResidueProfile::quotient(ResidueProfile inner, Integer divisor) {
  if (divisor < 1) throw DomainError("quotient divisor must be positive");
  if (inner.residue(divisor) != 0) {
    throw ExactnessError("profile is not divisible by " + to_string(divisor));
  }
  if (divisor == 1) return inner;
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Quotient;
  n->a = std::move(divisor);
  n->terms.emplace_back(1, std::move(inner));
  return ResidueProfile(std::move(n));
}

Integer ResidueProfile::residue(const Integer& n) const {
  if (n < 1) throw DomainError("residue modulus must be positive");
  {
    std::lock_guard lock(node_->mu);
    auto it = node_->memo.find(n);
    if (it != node_->memo.end()) return it->second;
  }
  Integer r = node_->compute(n);
  std::lock_guard lock(node_->mu);
  auto [it, inserted] = node_->memo.emplace(n, r);
  if (inserted) node_->log.emplace_back(n, r);
  return it->second;
}

std::string ResidueProfile::kind() const {
  switch (node_->kind) {
    case Node::Kind::Standard:
      return "standard";
    case Node::Kind::Factorial:
      return "factorial";
    case Node::Kind::Prefix:
      return "prefix";
    case Node::Kind::Combination:
      return "combination";
    case Node::Kind::Quotient:
      return "quotient";
  }
  return "?";
}

std::vector<std::pair<Integer, Integer>> ResidueProfile::query_log() const {
  std::lock_guard lock(node_->mu);
  return node_->log;
}

std::optional<std::pair<DivConstraint, DivConstraint>> ResidueProfile::coherence_violation() const {
  const auto log = query_log();
  for (const auto& [m, rm] : log) {
    for (const auto& [n, rn] : log) {
      if (m != n && mod(n, m) == 0 && mod(rn, m) != rm) {
        return std::make_pair(DivConstraint{rm, m}, DivConstraint{rn, n});
      }
    }
  }
  return std::nullopt;
}

struct ProfileCodec {
  using json = nlohmann::json;

  static json encode(const ResidueProfile& p) {
    const auto& n = *p.node_;
    json j;
    j["kind"] = p.kind();
    switch (n.kind) {
      case ResidueProfile::Node::Kind::Standard:
        j["value"] = to_string(n.a);
        break;
      case ResidueProfile::Node::Kind::Factorial:
        j["offset"] = to_string(n.a);
        j["scale"] = to_string(n.b);
        break;
      case ResidueProfile::Node::Kind::Prefix: {
        j["residues"] = json::array();
        for (const auto& c : n.entries) {
          j["residues"].push_back({{"modulus", to_string(c.modulus)}, {"residue", to_string(c.residue)}});
        }
        break;
      }
      case ResidueProfile::Node::Kind::Combination: {
        j["constant"] = to_string(n.a);
        j["terms"] = json::array();
        for (const auto& [c, q] : n.terms) j["terms"].push_back({{"coefficient", to_string(c)}, {"profile", encode(q)}});
        break;
      }
      case ResidueProfile::Node::Kind::Quotient:
        j["divisor"] = to_string(n.a);
        j["profile"] = encode(n.terms.at(0).second);
        break;
    }
    return j;
  }

  static ResidueProfile decode(const json& j, const std::string& ptr) {
    if (!j.is_object()) throw SchemaError("profile must be an object", ptr.empty() ? "/" : ptr);
    const std::string kind = detail::json_string(j, "kind", ptr);
    if (kind == "standard") return ResidueProfile::standard(detail::json_integer(j, "value", ptr));
    if (kind == "factorial") {
      return ResidueProfile::factorial(detail::json_integer(j, "offset", ptr, Integer(0)),
                                       detail::json_integer(j, "scale", ptr, Integer(1)));
    }
    if (kind == "prefix") {
      const json& rs = detail::json_field(j, "residues", ptr);
      if (!rs.is_array()) throw SchemaError("residues must be an array", ptr + "/residues");
      std::vector<DivConstraint> cs;
      for (std::size_t i = 0; i < rs.size(); ++i) {
        const std::string at = ptr + "/residues/" + std::to_string(i);
        DivConstraint c{detail::json_integer(rs[i], "residue", at), detail::json_integer(rs[i], "modulus", at)};
        if (c.modulus < 1) throw SchemaError("modulus must be positive", at + "/modulus");
        cs.push_back(c);
        const CrtResult crt = crt_consistent(cs);
        if (!crt.consistent) {
          throw SchemaError("incoherent residue prefix: " + to_string(c.residue) + " mod " + to_string(c.modulus) +
                                " contradicts an earlier entry",
                            at);
        }
      }
      return ResidueProfile::prefix(std::move(cs));
    }
    if (kind == "combination") {
      const json& ts = detail::json_field(j, "terms", ptr);
      if (!ts.is_array()) throw SchemaError("terms must be an array", ptr + "/terms");
      std::vector<std::pair<Integer, ResidueProfile>> terms;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string at = ptr + "/terms/" + std::to_string(i);
        terms.emplace_back(detail::json_integer(ts[i], "coefficient", at),
                           decode(detail::json_field(ts[i], "profile", at), at + "/profile"));
      }
      return ResidueProfile::combination(detail::json_integer(j, "constant", ptr, Integer(0)), std::move(terms));
    }
    if (kind == "quotient") {
      const Integer d = detail::json_integer(j, "divisor", ptr);
      if (d < 1) throw SchemaError("divisor must be positive", ptr + "/divisor");
      ResidueProfile inner = decode(detail::json_field(j, "profile", ptr), ptr + "/profile");
      try {
        return ResidueProfile::quotient(std::move(inner), d);
      } catch (const ExactnessError& e) {
        throw SchemaError(e.what(), ptr + "/divisor");
      }
    }
    throw SchemaError("unknown profile kind '" + kind + "'", ptr + "/kind");
  }
};

std::string ResidueProfile::to_json_text() const { return ProfileCodec::encode(*this).dump(); }

ResidueProfile ResidueProfile::from_json_text(const std::string& text, const std::string& pointer) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what(), pointer.empty() ? "/" : pointer);
  }
  return ProfileCodec::decode(j, pointer);
}

namespace detail {

nlohmann::json profile_to_json(const ResidueProfile& p) { return ProfileCodec::encode(p); }
ResidueProfile profile_from_json(const nlohmann::json& j, const std::string& pointer) {
  return ProfileCodec::decode(j, pointer);
}

const nlohmann::json& json_field(const nlohmann::json& j, const char* key, const std::string& ptr) {
  if (!j.is_object()) throw SchemaError("expected an object", ptr.empty() ? "/" : ptr);
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'", ptr + "/" + key);
  return *it;
}

std::string json_string(const nlohmann::json& j, const char* key, const std::string& ptr) {
  const auto& v = json_field(j, key, ptr);
  if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string", ptr + "/" + key);
  return v.get<std::string>();
}

namespace {

Integer integer_value(const nlohmann::json& v, const std::string& at) {
  try {
    if (v.is_number_integer()) return parse_integer(v.dump());
    if (v.is_string()) return parse_integer(v.get<std::string>());
  } catch (const Error&) {
  }
  throw SchemaError("expected an integer", at);
}

}  // namespace

Integer json_integer(const nlohmann::json& j, const char* key, const std::string& ptr,
                     std::optional<Integer> fallback) {
  if (fallback && j.is_object() && !j.contains(key)) return *fallback;
  return integer_value(json_field(j, key, ptr), ptr + "/" + key);
}

Rational json_rational(const nlohmann::json& j, const char* key, const std::string& ptr) {
  const auto& v = json_field(j, key, ptr);
  try {
    if (v.is_number_integer()) return parse_rational(v.dump());
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const Error&) {
  }
  throw SchemaError("expected a rational", ptr + "/" + key);
}

}  // namespace detail

}  // namespace saturator

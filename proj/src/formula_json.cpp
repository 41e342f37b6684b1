// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <string>

#include "json.hpp"
#include "saturator/errors.hpp"
#include "saturator/formula.hpp"
#include "saturator/numeric.hpp"

namespace saturator {

namespace {

using json = nlohmann::json;

json term_json(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return {{"var", t.name()}};
    case Term::Kind::Const:
      return {{"const", to_string(t.value())}};
    case Term::Kind::Add:
      return {{"op", "add"}, {"args", {term_json(t.lhs()), term_json(t.rhs())}}};
    case Term::Kind::Sub:
      return {{"op", "sub"}, {"args", {term_json(t.lhs()), term_json(t.rhs())}}};
    case Term::Kind::Mul:
      return {{"op", "mul"}, {"args", {term_json(t.lhs()), term_json(t.rhs())}}};
    case Term::Kind::Neg:
      return {{"op", "neg"}, {"args", json::array({term_json(t.lhs())})}};
    case Term::Kind::Scale:
      return {{"op", "scale"}, {"factor", to_string(t.value())}, {"args", json::array({term_json(t.lhs())})}};
  }
  return {};
}

json formula_json(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Lt:
      return {{"op", "lt"}, {"args", {term_json(f.lhs_term()), term_json(f.rhs_term())}}};
    case Formula::Kind::Eq:
      return {{"op", "eq"}, {"args", {term_json(f.lhs_term()), term_json(f.rhs_term())}}};
    case Formula::Kind::Divides:
      return {{"op", "divides"}, {"modulus", to_string(f.modulus())}, {"args", json::array({term_json(f.term())})}};
    case Formula::Kind::Not:
      return {{"op", "not"}, {"args", json::array({formula_json(f.operand())})}};
    case Formula::Kind::And:
      return {{"op", "and"}, {"args", {formula_json(f.left()), formula_json(f.right())}}};
    case Formula::Kind::Or:
      return {{"op", "or"}, {"args", {formula_json(f.left()), formula_json(f.right())}}};
    case Formula::Kind::Implies:
      return {{"op", "implies"}, {"args", {formula_json(f.left()), formula_json(f.right())}}};
    case Formula::Kind::Exists:
      return {{"op", "exists"}, {"var", f.bound_var()}, {"body", formula_json(f.body())}};
    case Formula::Kind::Forall:
      return {{"op", "forall"}, {"var", f.bound_var()}, {"body", formula_json(f.body())}};
  }
  return {};
}

const json& field(const json& j, const char* key, const std::string& ptr) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing \"") + key + "\"", ptr);
  return j[key];
}

std::string string_field(const json& j, const char* key, const std::string& ptr) {
  const json& v = field(j, key, ptr);
  if (!v.is_string()) throw SchemaError(std::string("\"") + key + "\" must be a string", ptr + "/" + key);
  return v.get<std::string>();
}

Integer integer_field(const json& j, const char* key, const std::string& ptr) {
  const json& v = field(j, key, ptr);
  if (v.is_number_integer()) return Integer(v.get<long>());
  try {
    if (v.is_string()) return parse_integer(v.get<std::string>());
  } catch (const std::exception&) {
  }
  throw SchemaError(std::string("\"") + key + "\" must be an integer", ptr + "/" + key);
}

const json& args(const json& j, std::size_t n, const std::string& ptr) {
  const json& a = field(j, "args", ptr);
  if (!a.is_array() || a.size() != n) {
    throw SchemaError("\"args\" must have " + std::to_string(n) + " entries", ptr + "/args");
  }
  return a;
}

Term term_from(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw SchemaError("term must be an object", ptr);
  if (j.contains("var")) return Term::var(string_field(j, "var", ptr));
  if (j.contains("const")) return Term::constant(integer_field(j, "const", ptr));
  const std::string op = string_field(j, "op", ptr);
  auto arg = [&](std::size_t n, std::size_t i) { return term_from(args(j, n, ptr)[i], ptr + "/args/" + std::to_string(i)); };
  if (op == "add" || op == "sub" || op == "mul") {
    Term lhs = arg(2, 0);
    Term rhs = arg(2, 1);
    if (op == "add") return Term::add(lhs, rhs);
    return op == "sub" ? Term::sub(lhs, rhs) : Term::mul(lhs, rhs);
  }
  if (op == "neg") return Term::neg(arg(1, 0));
  if (op == "scale") {
    Integer factor = integer_field(j, "factor", ptr);
    return Term::scale(factor, arg(1, 0));
  }
  throw SchemaError("unknown term op \"" + op + "\"", ptr + "/op");
}

Formula formula_from(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw SchemaError("formula must be an object", ptr);
  const std::string op = string_field(j, "op", ptr);
  auto term = [&](std::size_t n, std::size_t i) { return term_from(args(j, n, ptr)[i], ptr + "/args/" + std::to_string(i)); };
  auto sub = [&](std::size_t n, std::size_t i) {
    return formula_from(args(j, n, ptr)[i], ptr + "/args/" + std::to_string(i));
  };
  if (op == "lt" || op == "eq") {
    Term lhs = term(2, 0);
    Term rhs = term(2, 1);
    return op == "lt" ? Formula::lt(lhs, rhs) : Formula::eq(lhs, rhs);
  }
  if (op == "divides") {
    const Integer n = integer_field(j, "modulus", ptr);
    if (n < 2) throw SchemaError("modulus must be at least 2", ptr + "/modulus");
    return Formula::divides(n, term(1, 0));
  }
  if (op == "not") return Formula::negation(sub(1, 0));
  if (op == "and" || op == "or" || op == "implies") {
    Formula lhs = sub(2, 0);
    Formula rhs = sub(2, 1);
    if (op == "and") return Formula::conjunction(lhs, rhs);
    return op == "or" ? Formula::disjunction(lhs, rhs) : Formula::implication(lhs, rhs);
  }
  if (op == "exists" || op == "forall") {
    const std::string v = string_field(j, "var", ptr);
    Formula body = formula_from(field(j, "body", ptr), ptr + "/body");
    return op == "exists" ? Formula::exists(v, body) : Formula::forall(v, body);
  }
  throw SchemaError("unknown formula op \"" + op + "\"", ptr + "/op");
}

}  // namespace

std::string to_json_text(const Term& term) { return term_json(term).dump(); }
std::string to_json_text(const Formula& formula) { return formula_json(formula).dump(); }

Formula formula_from_json_text(const std::string& text, Signature sig) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what(), "");
  }
  Formula f = formula_from(j, "");
  check_signature(f, sig);
  return f;
}

}  // namespace saturator

// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "saturator/numeric.hpp"

namespace saturator {

/// The three first-order languages the workbench understands.
///
///  * OrderedGroup: +, -, 0, <, integer scalar multiples (divisible ordered abelian groups).
///  * Presburger:   +, -, integer constants, <, unary divisibility predicates P_n (n >= 2).
///  * OrderedRing:  +, -, *, integer constants, < (real closed fields).
enum class Signature { OrderedGroup, Presburger, OrderedRing };

std::string_view signature_name(Signature sig);
// Accepts "og"/"doag", "pr"/"presburger", "ring"/"rcf".
std::optional<Signature> parse_signature(std::string_view name);

class Term {
 public:
  enum class Kind { Var, Const, Add, Sub, Neg, Scale, Mul };

  static Term var(std::string name);
  static Term constant(Integer value);
  static Term add(Term lhs, Term rhs);
  static Term sub(Term lhs, Term rhs);
  static Term neg(Term operand);
  // factor * operand with an integer literal factor (group and Presburger signatures).
  static Term scale(Integer factor, Term operand);
  // General product (ordered ring signature only).
  static Term mul(Term lhs, Term rhs);

  Kind kind() const;
  const std::string& name() const;
  // Constant value, or the factor of a Scale node.
  const Integer& value() const;
  // Left child of Add/Sub/Mul, the operand of Neg/Scale.
  const Term& lhs() const;
  const Term& rhs() const;

  void collect_vars(std::set<std::string>& out) const;
  // Smallest signature-independent check: does the term use Mul / non-zero constants?
  bool uses_mul() const;
  bool uses_nonzero_constant() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Formula {
 public:
  enum class Kind { Lt, Eq, Divides, Not, And, Or, Implies, Exists, Forall };

  static Formula lt(Term lhs, Term rhs);
  static Formula eq(Term lhs, Term rhs);
  // P_n(t); n >= 2.
  static Formula divides(Integer modulus, Term term);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);

  // The grammar has no boolean constants; truth is "0 = 0" and falsity "0 < 0".
  static Formula truth();
  static Formula falsity();

  Kind kind() const;
  bool is_atomic() const;
  bool is_quantifier() const;

  const Term& lhs_term() const;   // Lt, Eq
  const Term& rhs_term() const;   // Lt, Eq
  const Term& term() const;       // Divides
  const Integer& modulus() const; // Divides
  const Formula& operand() const; // Not
  const Formula& left() const;    // And, Or, Implies
  const Formula& right() const;   // And, Or, Implies
  const std::string& bound_var() const;  // Exists, Forall
  const Formula& body() const;           // Exists, Forall

  // Sorted free-variable list, fixed at construction.
  const std::vector<std::string>& free_vars() const;
  bool is_quantifier_free() const;
  // Structural check: negations only directly above atoms, no implications.
  bool is_nnf() const;
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar (whitespace-insensitive):
//   formula  := disj ('->' formula)?
//   disj     := conj ('|' conj)*
//   conj     := unary ('&' unary)*
//   unary    := '!' unary | ('E' | 'A') var '.' formula | '(' formula ')' | atom
//   atom     := 'P' digits '(' term ')' | term ('<' | '=') term
//   term     := prod (('+' | '-') prod)*
//   prod     := factor ('*' factor)*
//   factor   := '-' factor | integer | var | '(' term ')'
//   var      := [a-z][a-z0-9]*
// '-' immediately followed by a literal denotes a negative literal.  Outside the ring
// signature the left operand of '*' must be an integer literal.
Formula parse_formula(std::string_view text, Signature sig);
Term parse_term(std::string_view text, Signature sig);

std::string to_string(const Term& term);
std::string to_string(const Formula& formula);

// JSON AST: terms are {"var"}, {"const"} or {"op", "args"} (scale also has "factor");
// formulas are {"op", "args"}, with "modulus" for divides and "var"/"body" for quantifiers.
std::string to_json_text(const Term& term);
std::string to_json_text(const Formula& formula);
// SchemaError with a JSON pointer on malformed input; SignatureError outside sig.
Formula formula_from_json_text(const std::string& text, Signature sig);

// Throws SignatureError if the formula uses symbols outside the signature.
void check_signature(const Formula& formula, Signature sig);
void check_signature(const Term& term, Signature sig);

// Capture-avoiding substitution of `replacement` for the free occurrences of `var`.
Formula substitute(const Formula& formula, const std::string& var, const Term& replacement);
Term substitute(const Term& term, const std::string& var, const Term& replacement);

// Canonical variable names: the index mod 26 picks the first letter, the quotient a
// bijective base-36 suffix over [a-z0-9]: 0 -> a, 25 -> z, 26 -> aa, 27 -> ba, ...
std::string variable_name(const Integer& index);
Integer variable_index(std::string_view name);
bool is_variable_name(std::string_view name);

// Positional variable name used for tuple slots: slot 0 -> "a", slot 1 -> "b", ...
std::string slot_name(std::size_t slot);

}  // namespace saturator

// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "saturator/formula.hpp"
#include "saturator/numeric.hpp"

namespace saturator {

using Assignment = std::map<std::string, Integer>;

// sum coeffs[x] * x + constant, with no zero coefficients stored.
class LinearTerm {
 public:
  LinearTerm() = default;
  explicit LinearTerm(Integer constant) : constant_(std::move(constant)) {}
  static LinearTerm variable(const std::string& name, Integer coeff = 1);
  // Throws SignatureError when the term is not linear.
  static LinearTerm from_term(const Term& term);

  const std::map<std::string, Integer>& coeffs() const { return coeffs_; }
  const Integer& constant() const { return constant_; }
  Integer coeff(const std::string& var) const;
  bool has(const std::string& var) const { return coeffs_.count(var) > 0; }
  bool is_constant() const { return coeffs_.empty(); }
  // gcd of the variable coefficients (0 for constants).
  Integer content() const;

  LinearTerm operator+(const LinearTerm& o) const;
  LinearTerm operator-(const LinearTerm& o) const;
  LinearTerm operator-() const;
  LinearTerm operator*(const Integer& k) const;
  LinearTerm plus(const Integer& k) const;
  LinearTerm without(const std::string& var) const;
  LinearTerm substitute(const std::string& var, const LinearTerm& value) const;
  void set_coeff(const std::string& var, const Integer& c);

  Integer eval(const Assignment& values) const;
  Term to_term() const;

  friend bool operator==(const LinearTerm& a, const LinearTerm& b) {
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LinearTerm& a, const LinearTerm& b) { return !(a == b); }
  friend bool operator<(const LinearTerm& a, const LinearTerm& b);

 private:
  std::map<std::string, Integer> coeffs_;
  Integer constant_ = 0;
};

// Presburger literal over a linear term t:
//   Pos: t > 0,  Eq: t = 0,  Neq: t != 0,  Div: n | t,  NDiv: not n | t.
struct Literal {
  enum class Kind { Pos, Eq, Neq, Div, NDiv };
  Kind kind;
  LinearTerm term;
  Integer modulus = 0;

  Literal negated() const;
  bool eval(const Assignment& values) const;
  Formula to_formula() const;
  std::string to_string() const { return saturator::to_string(to_formula()); }

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.kind == b.kind && a.modulus == b.modulus && a.term == b.term;
  }
  friend bool operator<(const Literal& a, const Literal& b);
};

// Normalizes a literal: gcd reduction, tightened constants, reduced residues.
// Returns a bool when the literal is decided by normalization.
std::variant<bool, Literal> normalize(const Literal& lit);

// Quantifier-free Presburger formula in negation normal form.  Built through smart
// constructors that normalize literals, flatten, deduplicate and fold constants.
class Qff {
 public:
  enum class Kind { True, False, Lit, And, Or };

  // The constant true formula.
  Qff() : Qff(truth()) {}

  static Qff truth();
  static Qff falsity();
  static Qff literal(const Literal& lit);
  static Qff conjunction(std::vector<Qff> parts);
  static Qff disjunction(std::vector<Qff> parts);
  // Converts a quantifier-free formula (Throws Unsupported on quantifiers).
  static Qff from_formula(const Formula& f);

  Kind kind() const;
  const Literal& lit() const;
  const std::vector<Qff>& children() const;
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }

  Qff negated() const;
  Qff substitute(const std::string& var, const LinearTerm& value) const;
  bool eval(const Assignment& values) const;
  std::size_t literal_count() const;
  std::size_t hash() const;
  void collect_vars(std::set<std::string>& out) const;
  void collect_literals(std::vector<Literal>& out) const;
  // Disjunctive normal form; nullopt when it would exceed `cap` conjuncts.
  std::optional<std::vector<std::vector<Literal>>> dnf(std::size_t cap) const;

  Formula to_formula() const;

  friend bool operator==(const Qff& a, const Qff& b);
  friend bool operator!=(const Qff& a, const Qff& b) { return !(a == b); }

 private:
  struct Node;
  explicit Qff(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Qff make(Kind kind, std::vector<Qff> kids, std::size_t hash, std::size_t literals);
  static Qff junction(std::vector<Qff> parts, bool conj);
  std::shared_ptr<const Node> node_;
};

// Fast evaluator for a Qff over a fixed variable order, on 64-bit inputs.
// Falls back to exact arithmetic when a coefficient does not fit.
class QffEvaluator {
 public:
  QffEvaluator(const Qff& qff, std::vector<std::string> vars);
  bool eval(const std::int64_t* values) const;
  bool exact() const { return big_.has_value(); }

 private:
  struct Op {
    std::uint8_t kind;  // 0 true, 1 false, 2 lit, 3 and, 4 or
    std::uint8_t lit_kind;
    std::uint32_t begin;  // literal index, or first child slot
    std::uint32_t count;
  };
  bool eval_node(std::uint32_t idx, const std::int64_t* values) const;

  std::vector<std::string> vars_;
  std::vector<Op> ops_;
  std::vector<std::uint32_t> child_slots_;
  std::vector<std::int64_t> coeffs_;  // per literal: |vars| coefficients, constant, modulus
  std::optional<Qff> big_;
};

struct QeOptions {
  // Maximum number of literal occurrences in any intermediate result.
  std::size_t literal_cap = 2'000'000;
  // Conjunctive path is used while the DNF has at most this many conjuncts.
  std::size_t dnf_cap = 64;
};

// Cooper elimination of every quantifier.  Throws QeBlowup past the literal cap.
Qff cooper_qe(const Formula& f, const QeOptions& opts = QeOptions{});
// Eliminates a single existential quantifier in front of a quantifier-free body.
Qff eliminate_exists(const std::string& var, const Qff& body, const QeOptions& opts = QeOptions{});

// Truth in (Z, +, <, 0, 1, P_n) of a sentence.
bool decide_standard(const Formula& sentence, const QeOptions& opts = QeOptions{});

// (numerator) / divisor; exact whenever the owning cell's context holds.
struct DclTerm {
  LinearTerm numerator;
  Integer divisor = 1;
  std::string to_string() const;
  friend bool operator==(const DclTerm& a, const DclTerm& b) {
    return a.divisor == b.divisor && a.numerator == b.numerator;
  }
};

// context(a) & v = r mod M & v = e_i & l_j < v & v < u_k.
struct NormalFormCell {
  std::vector<Literal> context;
  Integer modulus = 1;
  Integer residue = 0;
  std::vector<DclTerm> equalities;
  std::vector<DclTerm> lower;
  std::vector<DclTerm> upper;

  bool holds(const Integer& v, const Assignment& context_values) const;
  // Divisibility certificates of the dcl terms are part of the context.
  bool certificates_hold(const Assignment& context_values) const;
  Qff to_qff(const std::string& var) const;
};

struct NormalForm {
  std::string var;
  std::vector<NormalFormCell> cells;
  Qff to_qff() const;
};

// Disjunction of cells equivalent to f over Pr; cells may overlap.
NormalForm normal_form(const Formula& f, const std::string& var, const QeOptions& opts = QeOptions{});

struct DivConstraint {
  Integer residue;
  Integer modulus;
  friend bool operator==(const DivConstraint& a, const DivConstraint& b) {
    return a.residue == b.residue && a.modulus == b.modulus;
  }
};

struct CrtResult {
  bool consistent = true;
  Integer witness = 0;
  Integer modulus = 1;
  std::optional<std::pair<DivConstraint, DivConstraint>> conflict;
};

// Solvability of v = r_i mod n_i; a witness mod lcm or the first conflicting pair.
CrtResult crt_consistent(const std::vector<DivConstraint>& constraints);

}  // namespace saturator

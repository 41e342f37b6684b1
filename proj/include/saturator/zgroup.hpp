// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "saturator/doag.hpp"
#include "saturator/formula.hpp"
#include "saturator/numeric.hpp"
#include "saturator/oracle.hpp"
#include "saturator/presburger.hpp"

namespace saturator {

// A coherent assignment n -> x mod n, evaluated lazily and memoized.
class ResidueProfile {
 public:
  ResidueProfile();  // the profile of 0
  static ResidueProfile standard(Integer value);
  // offset + scale * sum_{j >= 0} j!
  static ResidueProfile factorial(Integer offset = 0, Integer scale = 1);
  // Explicit residues with a standard tail; throws DomainError on a CRT conflict.
  static ResidueProfile prefix(std::vector<DivConstraint> residues);
  static ResidueProfile combination(Integer constant, std::vector<std::pair<Integer, ResidueProfile>> terms);
  // n -> P(m n) / m.  Throws ExactnessError unless P(m) = 0.
  static ResidueProfile quotient(ResidueProfile inner, Integer divisor);

  // Result in [0, n).  n >= 1.
  Integer residue(const Integer& n) const;
  std::string kind() const;

  std::vector<std::pair<Integer, Integer>> query_log() const;
  // A pair (m, n) with m | n in the log whose residues disagree.
  std::optional<std::pair<DivConstraint, DivConstraint>> coherence_violation() const;

  std::string to_json_text() const;
  // `pointer` prefixes JSON-pointer diagnostics in SchemaError.
  static ResidueProfile from_json_text(const std::string& text, const std::string& pointer = "");

 private:
  struct Node;
  explicit ResidueProfile(std::shared_ptr<Node> node) : node_(std::move(node)) {}
  std::shared_ptr<Node> node_;
  friend struct ProfileCodec;
};

struct Generator {
  std::string name;
  HahnVector position;
  ResidueProfile profile;
};

// (r + sum_i t_i c_i) / m.  Elements of a smaller model stay valid in its extensions.
struct ModelElement {
  Integer r = 0;
  std::vector<Integer> t;
  Integer m = 1;

  Integer coefficient(std::size_t i) const { return i < t.size() ? t[i] : Integer(0); }
  friend bool operator==(const ModelElement& a, const ModelElement& b);
};

std::string to_string(const ModelElement& x, const std::vector<Generator>& gens);

using ElementAssignment = std::map<std::string, ModelElement>;

struct DecideOptions {
  std::size_t max_quantifier_depth = 4;
  QeOptions qe;
};

// A finitely generated model of Presburger arithmetic: Z plus generators placed in the
// Hahn skeleton (exponent 0 is the class of 1, larger exponents are larger classes).
class ZModel {
 public:
  ZModel() = default;

  // Requires positive leading coefficient, positive exponents, and Q-independence.
  ZModel with_generator(Generator g) const;
  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

  ModelElement constant(const Integer& n) const;
  ModelElement generator(std::size_t i) const;
  // Checks the divisibility certificate, then gcd-reduces.
  ModelElement element(Integer r, std::vector<Integer> t, Integer m = 1) const;

  ModelElement add(const ModelElement& x, const ModelElement& y) const;
  ModelElement sub(const ModelElement& x, const ModelElement& y) const;
  ModelElement scale(const Integer& k, const ModelElement& x) const;
  ModelElement divide(const ModelElement& x, const Integer& d) const;
  ModelElement linear(const LinearTerm& term, const ElementAssignment& values) const;

  HahnVector position(const ModelElement& x) const;
  int eval_atomic(const ModelElement& x, const ModelElement& y) const;
  int sign(const ModelElement& x) const;
  Integer residue(const ModelElement& x, const Integer& n) const;
  ResidueProfile profile_of(const ModelElement& x) const;

  bool decide(const Formula& f, const ElementAssignment& values, const DecideOptions& opts = DecideOptions{}) const;
  bool eval(const Qff& qff, const ElementAssignment& values) const;
  bool eval(const Literal& lit, const ElementAssignment& values) const;

  // Leading exponents of the nonzero elements of the span of the generator positions.
  std::vector<Rational> class_exponents() const;

  std::string to_json_text() const;
  static ZModel from_json_text(const std::string& text);

 private:
  std::vector<Generator> gens_;
};

// Slots a, b, c, ... name (v, params...).  The cut of p^- over dcl(params) is
//   center + direction * u,   class(lower_scale) < class(u) < class(upper_scale),  u > 0.
struct CutSpec {
  std::vector<ModelElement> params;
  DclTerm center{LinearTerm(0), 1};
  int direction = 1;
  DclTerm lower_scale{LinearTerm(1), 1};
  std::optional<DclTerm> upper_scale;
  ResidueProfile residues;

  // The bounds g + d n L and g + d U / n, plus P_n(v - p(n)), for 1 <= n <= level.
  std::vector<Formula> materialize(std::size_t level) const;
};

struct CutWindow {
  Rational low;                 // leading exponent of the lower scale
  std::optional<Rational> high;  // of the upper scale; none means unbounded
  bool contains(const Rational& e) const { return low < e && (!high || e < *high); }
};

// Checks positivity of the scales, the order of the materialized bounds, and that no
// element of dcl(params) falls inside the window.
CutWindow validate_cut(const ZModel& model, const CutSpec& p);
bool cut_realized(const ZModel& model, const CutSpec& p);
std::optional<ModelElement> cut_realization(const ZModel& model, const CutSpec& p);
// Membership in the complete type p(v, params) determined by the cut and the residues.
bool cut_type_contains(const ZModel& model, const CutSpec& p, const Formula& f);
TypeOracle cut_type(const ZModel& model, const CutSpec& p, std::string label = "p");

struct CaseOneExtension {
  ZModel model;
  std::size_t generator = 0;
  ModelElement b;
};
CaseOneExtension extend_case1(const ZModel& model, const CutSpec& p, std::string name = "");

struct CaseTwoExtension {
  ZModel model;
  std::size_t epsilon = 0;
  ModelElement realization;
};
CaseTwoExtension extend_case2(const ZModel& model, const CutSpec& p, const ModelElement& b,
                              std::size_t verify_level = 12, std::string name = "");

TypeOracle type_of(const ZModel& model, std::vector<ModelElement> tuple, std::string label = "tp",
                   DecideOptions opts = DecideOptions{});

// tp(b, a) with b in slot 0, and tp(a, c).  The reduced type is tp(b, c).
struct TypeReduction {
  TypeOracle tp_b_a;
  TypeOracle tp_a_c;
  std::size_t context_arity = 0;
};

bool decide_by_reduction(const Formula& f, std::size_t arity, const TypeReduction& oracles,
                         const Budget& budget = Budget{});
TypeOracle type_of_reduction(TypeReduction oracles, std::size_t arity, Budget budget = Budget{},
                             std::string label = "tp-reduced");

}  // namespace saturator

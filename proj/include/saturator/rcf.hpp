// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "saturator/formula.hpp"
#include "saturator/numeric.hpp"
#include "saturator/oracle.hpp"

namespace saturator {

// Dense univariate polynomial with rational coefficients, lowest degree first.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c);
  static UPoly x();
  // "[c0, c1, ..., cn]" with rational entries.
  static UPoly parse(std::string_view text);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& lead() const;

  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn(eval(x)); }
  int sign_at_infinity(int direction) const;

  UPoly derivative() const;
  UPoly monic() const;
  UPoly scaled(const Rational& k) const;
  // p(-x).
  UPoly reflected() const;
  // x^deg p(1/x).
  UPoly reversed() const;
  // Greatest square-free divisor, monic.
  UPoly square_free() const;
  // 1 + max |c_i / c_n|: every real root lies strictly inside (-bound, bound).
  Rational root_bound() const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator-() const { return scaled(-1); }
  UPoly operator*(const UPoly& o) const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  // Monic gcd (zero if both are zero).
  static UPoly gcd(const UPoly& a, const UPoly& b);

  std::string to_string(const std::string& var = "v") const;
  std::string to_list_text() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// p, p', then negated remainders.
std::vector<UPoly> sturm_sequence(const UPoly& p);
int sign_variations(const std::vector<UPoly>& seq, const Rational& x);
int sign_variations_at_infinity(const std::vector<UPoly>& seq, int direction);
// Distinct roots in (a, b].
int sturm_count(const std::vector<UPoly>& seq, const Rational& a, const Rational& b);
// Distinct real roots.
int sturm_count(const std::vector<UPoly>& seq);

// A real algebraic number: a square-free polynomial with exactly one root in the open
// interval (lo, hi), whose endpoints are not roots.  Rationals are stored exactly.
class RealAlgebraic {
 public:
  RealAlgebraic() : RealAlgebraic(Rational(0)) {}
  RealAlgebraic(const Rational& q);  // NOLINT: rationals embed implicitly
  RealAlgebraic(const Integer& n) : RealAlgebraic(Rational(n)) {}  // NOLINT
  RealAlgebraic(int n) : RealAlgebraic(Rational(n)) {}             // NOLINT
  // Throws DomainError unless p has exactly one root in (lo, hi) and none at the ends.
  RealAlgebraic(const UPoly& p, const Rational& lo, const Rational& hi);

  static RealAlgebraic sqrt(const Rational& q);
  // "q" (rational) or "root([c0, ..., cn], lo, hi)".
  static RealAlgebraic parse(std::string_view text);

  bool is_rational() const { return exact_.has_value(); }
  const std::optional<Rational>& rational() const { return exact_; }
  const UPoly& poly() const { return poly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  int degree() const { return poly_.degree(); }

  // Halves the isolating interval `steps` times (stops early once exact).
  RealAlgebraic refined(std::size_t steps = 1) const;
  // Refines until the interval width is at most w.
  RealAlgebraic refined_to(const Rational& w) const;

  int compare(const Rational& q) const;
  int sign() const { return compare(Rational(0)); }
  // Sign of p at this number.
  int sign_of(const UPoly& p) const;

  RealAlgebraic operator+(const RealAlgebraic& o) const;
  RealAlgebraic operator-(const RealAlgebraic& o) const;
  RealAlgebraic operator*(const RealAlgebraic& o) const;
  RealAlgebraic operator/(const RealAlgebraic& o) const;
  RealAlgebraic operator-() const;
  // Throws DomainError on zero.
  RealAlgebraic reciprocal() const;

  std::string to_string() const;
  std::string to_json_text() const;

 private:
  enum class Op { Add, Sub, Mul };
  static RealAlgebraic combine(const RealAlgebraic& a, const RealAlgebraic& b, Op op);
  // Picks the root of `annihilator` inside the interval image of the operands.
  static RealAlgebraic select_root(const UPoly& annihilator, RealAlgebraic a, RealAlgebraic b, Op op);

  UPoly poly_;
  Rational lo_;
  Rational hi_;
  std::optional<Rational> exact_;
};

int compare(const RealAlgebraic& a, const RealAlgebraic& b);
inline bool operator==(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) == 0; }
inline bool operator!=(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) != 0; }
inline bool operator<(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) < 0; }

// A rational strictly between two distinct algebraic numbers.
Rational separating_rational(const RealAlgebraic& a, const RealAlgebraic& b);

// All real roots of a non-zero polynomial in increasing order.
std::vector<RealAlgebraic> sturm_isolate(const UPoly& p);

using RealAssignment = std::map<std::string, RealAlgebraic>;

// Value of a ring term at real algebraic arguments.
RealAlgebraic evaluate(const Term& t, const RealAssignment& values);
// Truth of a quantifier-free ordered-ring formula.
bool evaluate(const Formula& f, const RealAssignment& values);

struct Cell {
  enum class Kind { Point, Interval };
  Kind kind = Kind::Interval;
  // Point: lo == hi == the point.  Interval: open, an absent end is infinite.
  std::optional<RealAlgebraic> lo;
  std::optional<RealAlgebraic> hi;
  bool value = false;
  // A rational inside the cell (the point itself when it is rational).
  std::optional<Rational> sample;

  bool contains(const RealAlgebraic& x) const;
};

struct CellDecomposition {
  std::string var;
  std::vector<Cell> cells;
  // Label of the cell containing x.
  bool value_at(const RealAlgebraic& x) const;
  std::vector<RealAlgebraic> points() const;
};

// Sign-invariant cells of a quantifier-free formula in `var`, with the remaining
// variables fixed by `params`.  Adjacent cells with equal labels are merged.
// Throws Unsupported when an atom's norm over the algebraic parameters vanishes.
CellDecomposition decompose(const Formula& f, const std::string& var, const RealAssignment& params = {});

// A real given by its cut, with a promise that it is not algebraic over the context.
class CutElement {
 public:
  explicit CutElement(ComputableReal real, bool requires_nonstandard = false);

  const ComputableReal& real() const { return real_; }
  // Set for stand-ins of cuts (above all reals, infinitely close to a point) that
  // only a non-archimedean frame realizes.
  bool requires_nonstandard() const { return nonstandard_; }

  // Sign of (this - x); never 0.  Throws PromiseViolation when x cannot be separated
  // within budget.bisections halvings.
  int compare(const RealAlgebraic& x, const Budget& budget = Budget{}) const;
  // Spot-check of the transcendence promise against every real root of p.
  void check_promise(const UPoly& p, const Budget& budget = Budget{}) const;

 private:
  ComputableReal real_;
  bool nonstandard_;
};

struct CutBound {
  RealAlgebraic value;
  // The side approaches `value` (all rationals below it, say) without containing it.
  bool approached = false;
};

// Realizes the cut above every lower bound and below every upper bound by a Liouville
// point strictly inside.  DomainError on crossed bounds, PreconditionViolation when the
// cut is realized by a listed algebraic point.
CutElement realize_cut(const std::vector<CutBound>& lower, const std::vector<CutBound>& upper);
CutElement realize_cut(const std::vector<RealAlgebraic>& lower, const std::vector<RealAlgebraic>& upper);

// Truth of f(b, params) by decomposing in var and locating b among the cell ends.
bool decide_cut(const Formula& f, const std::string& var, const CutElement& b, const RealAssignment& params = {},
                const Budget& budget = Budget{});

// The two types the reduction may consult.  tp_b_a has slots (b, a_1, ..., a_k);
// tp_a_c has slots (a_1, ..., a_k, c_1, ..., c_m).
struct CutReduction {
  TypeOracle tp_b_a;
  TypeOracle tp_a_c;
  std::size_t context_arity = 0;
};

// Truth of f(b, c) using only the two type oracles: dyadic brackets f < v < g for b
// are confirmed in tp(b, a) until tp(a, c) certifies that f(v, c) or its negation
// holds on the whole bracket.  Throws BudgetExhausted after budget.search_terms steps.
bool decide_cut_reduction(const Formula& f, const std::string& var, const std::vector<std::string>& params,
                          const CutReduction& oracles, const Budget& budget = Budget{});

// Type of a tuple of algebraic numbers, for formulas whose quantifiers all have
// quantifier-free bodies (Unsupported otherwise).
TypeOracle algebraic_type(std::vector<RealAlgebraic> tuple, std::string label = "tp");
// Quantifier-free type of (b, context).
TypeOracle cut_type(const CutElement& b, std::vector<RealAlgebraic> context, const Budget& budget = Budget{},
                    std::string label = "tp");

}  // namespace saturator

// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "saturator/formula.hpp"
#include "saturator/numeric.hpp"

namespace saturator {

// Resource limits shared by every engine.  Exhausting one raises BudgetExhausted.
struct Budget {
  std::size_t refine_steps = 10000;
  std::size_t tree_visits = std::size_t{1} << 20;
  std::size_t search_terms = 10000;
  std::size_t bisections = 256;

  // Defaults, with SATURATOR_BUDGET (a positive integer) overriding refine_steps and
  // search_terms when set.
  static Budget from_environment();
};

// A total decision procedure on the naturals with a first-answer memo cache.
// Copies share the cache; all queries are serialized through an internal mutex.
class MembershipOracle {
 public:
  using Decider = std::function<bool(const Integer&)>;

  MembershipOracle(std::string label, Decider decider);

  static MembershipOracle empty();
  static MembershipOracle finite(std::vector<Integer> members, std::string label = "finite");
  // Bit n is prefix[n] for n < |prefix|, then period[(n - |prefix|) mod |period|].
  static MembershipOracle eventually_periodic(std::string prefix, std::string period);

  bool contains(const Integer& n) const;
  // The cached answer, without querying.
  std::optional<bool> cached(const Integer& n) const;
  const std::string& label() const;
  // Cached answers in query order.
  std::vector<std::pair<Integer, bool>> query_log() const;
  std::size_t query_count() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// Turing join: 2n is answered by x(n), 2n + 1 by y(n).
MembershipOracle join(const MembershipOracle& x, const MembershipOracle& y);

struct RationalInterval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  Rational width() const { return hi - lo; }
};

// Above means r > q, Below means r < q.  Equal only for certified rationals.
enum class CutAnswer { Below, Above, Equal };
std::string_view cut_answer_name(CutAnswer a);

// A real given by its cut: a procedure producing nested rational intervals
// [lo_k, hi_k] around r whose widths tend to 0.
class ComputableReal {
 public:
  using Approximator = std::function<RationalInterval(std::size_t level)>;

  ComputableReal(std::string label, Approximator approx, std::optional<Rational> certificate = std::nullopt);

  static ComputableReal rational(const Rational& q);
  // sum_{n >= 1} digit * base^(-f(n)) with f one of "factorial", "square", "linear".
  static ComputableReal series(unsigned base, const std::string& exponent, unsigned digit = 1);

  // Interval at refinement level k (intersected with all earlier levels).
  RationalInterval at(std::size_t level) const;
  const std::optional<Rational>& certificate() const;
  const std::string& label() const;

  // Refines until q is separated from r.  Throws BudgetExhausted past budget.refine_steps
  // levels (the only possible outcome when r = q and r is uncertified).
  CutAnswer compare(const Rational& q, const Budget& budget = Budget{}) const;
  // Sign of r; r must be non-zero unless certified.
  int sign(const Budget& budget = Budget{}) const;

  ComputableReal operator+(const ComputableReal& other) const;
  ComputableReal operator-(const ComputableReal& other) const;
  ComputableReal operator*(const ComputableReal& other) const;
  ComputableReal operator-() const;
  // Requires r != 0: refines until an interval excludes 0, within budget.
  ComputableReal reciprocal(const Budget& budget = Budget{}) const;
  ComputableReal scaled(const Rational& q) const;

  std::vector<std::pair<Rational, CutAnswer>> query_log() const;
  // First pair of logged answers that no single real can produce, if any.
  std::optional<std::pair<std::pair<Rational, CutAnswer>, std::pair<Rational, CutAnswer>>> audit_monotonicity()
      const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// A type p(a, b, ...) given as a membership oracle over formula codes.  Free variables
// are the first `arity` slot names.
class TypeOracle {
 public:
  TypeOracle(Signature sig, std::size_t arity, MembershipOracle codes);
  // Builds the code oracle from a decision procedure on formulas.
  static TypeOracle from_decider(Signature sig, std::size_t arity, std::string label,
                                 std::function<bool(const Formula&)> decide);

  // Formulas with free variables outside the slots are never in the type.  Throws
  // ConsistencyViolation when both a formula and its negation have been answered "in".
  bool contains(const Formula& formula) const;
  bool contains_code(const Integer& code) const;

  Signature signature() const { return sig_; }
  std::size_t arity() const { return arity_; }
  const MembershipOracle& codes() const { return codes_; }

  // Scans all cached answers for a formula/negation pair that are both in.
  std::optional<std::pair<Integer, Integer>> consistency_violation() const;
  // The first axiom (sentence) not in the type, if any.
  std::optional<Formula> missing_axiom(const std::vector<Formula>& axioms) const;

 private:
  Signature sig_;
  std::size_t arity_;
  MembershipOracle codes_;
};

// A binary tree given by a membership test on bit strings ("0"/"1" characters).
class BinaryTreeOracle {
 public:
  explicit BinaryTreeOracle(std::function<bool(const std::string&)> on_tree, std::string label = "tree");

  bool on_tree(const std::string& node) const;
  const std::string& label() const;
  // A queried node that is on the tree while one of its queried prefixes is not.
  std::optional<std::pair<std::string, std::string>> downward_closure_violation() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

struct PathResult {
  enum class Status { Found, Absent, BudgetExhausted };
  Status status = Status::Absent;
  std::string path;
  std::size_t visits = 0;
};
std::string_view path_status_name(PathResult::Status s);

// Leftmost on-tree string of length `depth` by depth-first search, visiting at most
// `max_visits` nodes.
PathResult bounded_path(const BinaryTreeOracle& tree, std::size_t depth,
                        std::size_t max_visits = std::size_t{1} << 20);

// User-supplied infinite path (n -> bit); checked against a tree to a finite depth.
using PathOracle = std::function<bool(std::size_t)>;
bool path_stays_on_tree(const BinaryTreeOracle& tree, const PathOracle& path, std::size_t depth);

}  // namespace saturator

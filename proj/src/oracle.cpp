// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include "saturator/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "saturator/coding.hpp"
#include "saturator/errors.hpp"

namespace saturator {

Budget Budget::from_environment() {
  Budget b;
  if (const char* env = std::getenv("SATURATOR_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      b.refine_steps = static_cast<std::size_t>(v);
      b.search_terms = static_cast<std::size_t>(v);
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// MembershipOracle

struct MembershipOracle::State {
  std::string label;
  Decider decider;
  mutable std::mutex mutex;
  std::map<Integer, bool> cache;
  std::vector<std::pair<Integer, bool>> log;
};

MembershipOracle::MembershipOracle(std::string label, Decider decider) : state_(std::make_shared<State>()) {
  state_->label = std::move(label);
  state_->decider = std::move(decider);
}

MembershipOracle MembershipOracle::empty() {
  return MembershipOracle("empty", [](const Integer&) { return false; });
}

MembershipOracle MembershipOracle::finite(std::vector<Integer> members, std::string label) {
  auto set = std::make_shared<std::set<Integer>>(members.begin(), members.end());
  return MembershipOracle(std::move(label), [set](const Integer& n) { return set->count(n) > 0; });
}

MembershipOracle MembershipOracle::eventually_periodic(std::string prefix, std::string period) {
  auto valid = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
  };
  if (!valid(prefix) || !valid(period) || period.empty()) {
    throw DomainError("eventually periodic oracle needs 0/1 strings and a non-empty period");
  }
  std::string label = "periodic:" + prefix + "(" + period + ")";
  return MembershipOracle(std::move(label), [prefix, period](const Integer& n) {
    if (n < 0) return false;
    if (n < prefix.size()) return prefix[n.get_ui()] == '1';
    Integer k = mod(n - prefix.size(), Integer(static_cast<unsigned long>(period.size())));
    return period[k.get_ui()] == '1';
  });
}

bool MembershipOracle::contains(const Integer& n) const {
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->cache.find(n);
    if (it != state_->cache.end()) return it->second;
  }
  const bool answer = state_->decider(n);
  std::lock_guard lock(state_->mutex);
  auto [it, inserted] = state_->cache.emplace(n, answer);
  if (inserted) state_->log.emplace_back(n, answer);
  return it->second;
}

std::optional<bool> MembershipOracle::cached(const Integer& n) const {
  std::lock_guard lock(state_->mutex);
  auto it = state_->cache.find(n);
  if (it == state_->cache.end()) return std::nullopt;
  return it->second;
}

const std::string& MembershipOracle::label() const { return state_->label; }

std::vector<std::pair<Integer, bool>> MembershipOracle::query_log() const {
  std::lock_guard lock(state_->mutex);
  return state_->log;
}

std::size_t MembershipOracle::query_count() const {
  std::lock_guard lock(state_->mutex);
  return state_->cache.size();
}

MembershipOracle join(const MembershipOracle& x, const MembershipOracle& y) {
  return MembershipOracle("(" + x.label() + " + " + y.label() + ")", [x, y](const Integer& n) {
    if (n < 0) return false;
    const Integer half = n / 2;
    return mod(n, 2) == 0 ? x.contains(half) : y.contains(half);
  });
}

// ---------------------------------------------------------------------------
// ComputableReal

std::string_view cut_answer_name(CutAnswer a) {
  switch (a) {
    case CutAnswer::Below:
      return "below";
    case CutAnswer::Above:
      return "above";
    case CutAnswer::Equal:
      return "equal";
  }
  return "?";
}

struct ComputableReal::State {
  std::string label;
  Approximator approx;
  std::optional<Rational> certificate;
  mutable std::mutex mutex;
  std::vector<RationalInterval> levels;
  std::vector<std::pair<Rational, CutAnswer>> log;
};

ComputableReal::ComputableReal(std::string label, Approximator approx, std::optional<Rational> certificate)
    : state_(std::make_shared<State>()) {
  state_->label = std::move(label);
  state_->approx = std::move(approx);
  state_->certificate = std::move(certificate);
}

ComputableReal ComputableReal::rational(const Rational& q) {
  return ComputableReal(to_string(q), [q](std::size_t) { return RationalInterval{q, q}; }, q);
}

namespace {

Integer exponent_value(const std::string& kind, unsigned long n) {
  if (kind == "factorial") {
    Integer f = 1;
    for (unsigned long i = 2; i <= n; ++i) f *= i;
    return f;
  }
  if (kind == "square") return Integer(n) * n;
  if (kind == "linear") return Integer(n);
  throw DomainError("unknown series exponent '" + kind + "'");
}

Rational power_inverse(unsigned base, const Integer& e) {
  Integer den;
  mpz_pow_ui(den.get_mpz_t(), Integer(base).get_mpz_t(), e.get_ui());
  return Rational(Integer(1), den);
}

}  // namespace

ComputableReal ComputableReal::series(unsigned base, const std::string& exponent, unsigned digit) {
  if (base < 2) throw DomainError("series base must be at least 2");
  if (digit == 0 || digit >= base) throw DomainError("series digit must lie in 1..base-1");
  exponent_value(exponent, 1);
  std::string label = "series:" + std::to_string(digit) + "*" + std::to_string(base) + "^-" + exponent;
  return ComputableReal(std::move(label), [base, exponent, digit](std::size_t level) {
    // Partial sum of the first level+1 terms; the tail is below 2 * digit * base^-f(k+1).
    const unsigned long k = level + 1;
    Rational sum = 0;
    for (unsigned long n = 1; n <= k; ++n) sum += digit * power_inverse(base, exponent_value(exponent, n));
    Rational tail = 2 * digit * power_inverse(base, exponent_value(exponent, k + 1));
    sum.canonicalize();
    tail.canonicalize();
    return RationalInterval{sum, sum + tail};
  });
}

RationalInterval ComputableReal::at(std::size_t level) const {
  std::lock_guard lock(state_->mutex);
  auto& levels = state_->levels;
  while (levels.size() <= level) {
    RationalInterval next = state_->approx(levels.size());
    if (next.lo > next.hi) throw ConsistencyViolation("approximation interval is empty for " + state_->label);
    if (!levels.empty()) {
      const RationalInterval& prev = levels.back();
      if (next.hi < prev.lo || next.lo > prev.hi) {
        throw ConsistencyViolation("approximation intervals are not nested for " + state_->label);
      }
      next.lo = std::max(next.lo, prev.lo);
      next.hi = std::min(next.hi, prev.hi);
    }
    levels.push_back(std::move(next));
  }
  return levels[level];
}

const std::optional<Rational>& ComputableReal::certificate() const { return state_->certificate; }
const std::string& ComputableReal::label() const { return state_->label; }

CutAnswer ComputableReal::compare(const Rational& q, const Budget& budget) const {
  CutAnswer answer;
  if (state_->certificate) {
    const int c = cmp(*state_->certificate, q);
    answer = c < 0 ? CutAnswer::Below : c > 0 ? CutAnswer::Above : CutAnswer::Equal;
  } else {
    bool done = false;
    for (std::size_t level = 0; level < budget.refine_steps && !done; ++level) {
      const RationalInterval iv = at(level);
      if (q < iv.lo) {
        answer = CutAnswer::Above;
        done = true;
      } else if (q > iv.hi) {
        answer = CutAnswer::Below;
        done = true;
      }
    }
    if (!done) {
      throw BudgetExhausted("could not separate " + state_->label + " from " + to_string(q) + " within " +
                            std::to_string(budget.refine_steps) + " refinement steps");
    }
  }
  std::lock_guard lock(state_->mutex);
  state_->log.emplace_back(q, answer);
  return answer;
}

int ComputableReal::sign(const Budget& budget) const {
  switch (compare(Rational(0), budget)) {
    case CutAnswer::Above:
      return 1;
    case CutAnswer::Below:
      return -1;
    case CutAnswer::Equal:
      return 0;
  }
  return 0;
}

namespace {

std::optional<Rational> both(const std::optional<Rational>& a, const std::optional<Rational>& b,
                             Rational (*op)(const Rational&, const Rational&)) {
  if (a && b) return op(*a, *b);
  return std::nullopt;
}

Rational add_q(const Rational& a, const Rational& b) { return a + b; }
Rational sub_q(const Rational& a, const Rational& b) { return a - b; }
Rational mul_q(const Rational& a, const Rational& b) { return a * b; }

RationalInterval mul_iv(const RationalInterval& a, const RationalInterval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

}  // namespace

ComputableReal ComputableReal::operator+(const ComputableReal& other) const {
  ComputableReal a = *this;
  ComputableReal b = other;
  return ComputableReal("(" + label() + " + " + other.label() + ")", [a, b](std::size_t k) {
    RationalInterval x = a.at(k), y = b.at(k);
    return RationalInterval{x.lo + y.lo, x.hi + y.hi};
  }, both(certificate(), other.certificate(), add_q));
}

ComputableReal ComputableReal::operator-(const ComputableReal& other) const {
  ComputableReal a = *this;
  ComputableReal b = other;
  return ComputableReal("(" + label() + " - " + other.label() + ")", [a, b](std::size_t k) {
    RationalInterval x = a.at(k), y = b.at(k);
    return RationalInterval{x.lo - y.hi, x.hi - y.lo};
  }, both(certificate(), other.certificate(), sub_q));
}

ComputableReal ComputableReal::operator*(const ComputableReal& other) const {
  ComputableReal a = *this;
  ComputableReal b = other;
  return ComputableReal("(" + label() + " * " + other.label() + ")",
                        [a, b](std::size_t k) { return mul_iv(a.at(k), b.at(k)); },
                        both(certificate(), other.certificate(), mul_q));
}

ComputableReal ComputableReal::operator-() const {
  ComputableReal a = *this;
  std::optional<Rational> cert;
  if (certificate()) cert = -*certificate();
  return ComputableReal("-" + label(), [a](std::size_t k) {
    RationalInterval x = a.at(k);
    return RationalInterval{-x.hi, -x.lo};
  }, cert);
}

ComputableReal ComputableReal::scaled(const Rational& q) const {
  return *this * rational(q);
}

ComputableReal ComputableReal::reciprocal(const Budget& budget) const {
  if (certificate()) {
    if (*certificate() == 0) throw DomainError("reciprocal of zero");
    return rational(1 / *certificate());
  }
  std::size_t start = 0;
  for (;; ++start) {
    if (start >= budget.refine_steps) {
      throw BudgetExhausted("could not separate " + label() + " from 0 for the reciprocal");
    }
    const RationalInterval iv = at(start);
    if (iv.lo > 0 || iv.hi < 0) break;
  }
  ComputableReal a = *this;
  return ComputableReal("1/" + label(), [a, start](std::size_t k) {
    RationalInterval x = a.at(start + k);
    return RationalInterval{1 / x.hi, 1 / x.lo};
  });
}

std::vector<std::pair<Rational, CutAnswer>> ComputableReal::query_log() const {
  std::lock_guard lock(state_->mutex);
  return state_->log;
}

std::optional<std::pair<std::pair<Rational, CutAnswer>, std::pair<Rational, CutAnswer>>>
ComputableReal::audit_monotonicity() const {
  const auto log = query_log();
  // Every "above" point must lie below every "below" point, equal points in between.
  const std::pair<Rational, CutAnswer>* max_above = nullptr;
  const std::pair<Rational, CutAnswer>* min_below = nullptr;
  const std::pair<Rational, CutAnswer>* min_equal = nullptr;
  const std::pair<Rational, CutAnswer>* max_equal = nullptr;
  for (const auto& entry : log) {
    switch (entry.second) {
      case CutAnswer::Above:
        if (!max_above || entry.first > max_above->first) max_above = &entry;
        break;
      case CutAnswer::Below:
        if (!min_below || entry.first < min_below->first) min_below = &entry;
        break;
      case CutAnswer::Equal:
        if (!min_equal || entry.first < min_equal->first) min_equal = &entry;
        if (!max_equal || entry.first > max_equal->first) max_equal = &entry;
        break;
    }
  }
  if (max_above && min_below && max_above->first >= min_below->first) return std::make_pair(*max_above, *min_below);
  if (max_above && min_equal && max_above->first >= min_equal->first) return std::make_pair(*max_above, *min_equal);
  if (max_equal && min_below && max_equal->first >= min_below->first) return std::make_pair(*max_equal, *min_below);
  if (min_equal && max_equal && min_equal->first != max_equal->first) return std::make_pair(*min_equal, *max_equal);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// TypeOracle

namespace {

bool within_slots(const Formula& f, std::size_t arity) {
  for (const auto& v : f.free_vars()) {
    if (!is_variable_name(v) || variable_index(v) >= arity) return false;
  }
  return true;
}

}  // namespace

TypeOracle::TypeOracle(Signature sig, std::size_t arity, MembershipOracle codes)
    : sig_(sig), arity_(arity), codes_(std::move(codes)) {}

TypeOracle TypeOracle::from_decider(Signature sig, std::size_t arity, std::string label,
                                    std::function<bool(const Formula&)> decide) {
  MembershipOracle codes(std::move(label), [sig, arity, decide = std::move(decide)](const Integer& code) {
    if (code < 0) return false;
    Formula f = decode(code, sig);
    if (!within_slots(f, arity)) return false;
    return decide(f);
  });
  return TypeOracle(sig, arity, std::move(codes));
}

bool TypeOracle::contains(const Formula& formula) const {
  if (!within_slots(formula, arity_)) return false;
  return contains_code(encode(formula, sig_));
}

bool TypeOracle::contains_code(const Integer& code) const {
  const bool in = codes_.contains(code);
  if (!in) return false;
  Formula f = decode(code, sig_);
  const Integer neg = encode(Formula::negation(f), sig_);
  if (codes_.cached(neg).value_or(false)) {
    throw ConsistencyViolation("type " + codes_.label() + " contains both " + to_string(f) + " and its negation");
  }
  if (f.kind() == Formula::Kind::Not) {
    const Integer pos = encode(f.operand(), sig_);
    if (codes_.cached(pos).value_or(false)) {
      throw ConsistencyViolation("type " + codes_.label() + " contains both " + to_string(f.operand()) +
                                 " and its negation");
    }
  }
  return true;
}

std::optional<std::pair<Integer, Integer>> TypeOracle::consistency_violation() const {
  for (const auto& [code, in] : codes_.query_log()) {
    if (!in) continue;
    Formula f = decode(code, sig_);
    if (f.kind() != Formula::Kind::Not) continue;
    const Integer pos = encode(f.operand(), sig_);
    if (codes_.cached(pos).value_or(false)) return std::make_pair(pos, code);
  }
  return std::nullopt;
}

std::optional<Formula> TypeOracle::missing_axiom(const std::vector<Formula>& axioms) const {
  for (const auto& ax : axioms) {
    if (!contains(ax)) return ax;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Trees

struct BinaryTreeOracle::State {
  std::function<bool(const std::string&)> fn;
  std::string label;
  mutable std::mutex mutex;
  std::map<std::string, bool> cache;
};

BinaryTreeOracle::BinaryTreeOracle(std::function<bool(const std::string&)> on_tree, std::string label)
    : state_(std::make_shared<State>()) {
  state_->fn = std::move(on_tree);
  state_->label = std::move(label);
}

bool BinaryTreeOracle::on_tree(const std::string& node) const {
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->cache.find(node);
    if (it != state_->cache.end()) return it->second;
  }
  const bool answer = state_->fn(node);
  std::lock_guard lock(state_->mutex);
  return state_->cache.emplace(node, answer).first->second;
}

const std::string& BinaryTreeOracle::label() const { return state_->label; }

std::optional<std::pair<std::string, std::string>> BinaryTreeOracle::downward_closure_violation() const {
  std::lock_guard lock(state_->mutex);
  for (const auto& [node, in] : state_->cache) {
    if (!in) continue;
    for (std::size_t len = 0; len < node.size(); ++len) {
      auto it = state_->cache.find(node.substr(0, len));
      if (it != state_->cache.end() && !it->second) return std::make_pair(node, it->first);
    }
  }
  return std::nullopt;
}

std::string_view path_status_name(PathResult::Status s) {
  switch (s) {
    case PathResult::Status::Found:
      return "found";
    case PathResult::Status::Absent:
      return "absent";
    case PathResult::Status::BudgetExhausted:
      return "budget-exhausted";
  }
  return "?";
}

namespace {

// 1 found, 0 absent below this node, -1 out of visits.
int dfs(const BinaryTreeOracle& tree, std::string& node, std::size_t depth, std::size_t max_visits,
        std::size_t& visits) {
  if (visits >= max_visits) return -1;
  ++visits;
  if (!tree.on_tree(node)) return 0;
  if (node.size() == depth) return 1;
  for (char bit : {'0', '1'}) {
    node.push_back(bit);
    const int r = dfs(tree, node, depth, max_visits, visits);
    if (r != 0) return r;
    node.pop_back();
  }
  return 0;
}

}  // namespace

PathResult bounded_path(const BinaryTreeOracle& tree, std::size_t depth, std::size_t max_visits) {
  PathResult result;
  std::string node;
  const int r = dfs(tree, node, depth, max_visits, result.visits);
  if (r == 1) {
    result.status = PathResult::Status::Found;
    result.path = node;
  } else {
    result.status = r == 0 ? PathResult::Status::Absent : PathResult::Status::BudgetExhausted;
  }
  return result;
}

bool path_stays_on_tree(const BinaryTreeOracle& tree, const PathOracle& path, std::size_t depth) {
  std::string node;
  if (!tree.on_tree(node)) return false;
  for (std::size_t i = 0; i < depth; ++i) {
    node.push_back(path(i) ? '1' : '0');
    if (!tree.on_tree(node)) return false;
  }
  return true;
}

}  // namespace saturator

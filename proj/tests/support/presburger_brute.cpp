// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include "presburger_brute.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

namespace saturator::testing {

namespace {

// Evaluates a term tree at an integer environment.
std::int64_t eval_term(const Term& t, const std::map<std::string, std::int64_t>& env) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = env.find(t.name());
      return it == env.end() ? 0 : it->second;
    }
    case Term::Kind::Const:
      return t.value().get_si();
    case Term::Kind::Add:
      return eval_term(t.lhs(), env) + eval_term(t.rhs(), env);
    case Term::Kind::Sub:
      return eval_term(t.lhs(), env) - eval_term(t.rhs(), env);
    case Term::Kind::Neg:
      return -eval_term(t.lhs(), env);
    case Term::Kind::Scale:
      return t.value().get_si() * eval_term(t.lhs(), env);
    case Term::Kind::Mul:
      return eval_term(t.lhs(), env) * eval_term(t.rhs(), env);
  }
  return 0;
}

std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod64(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

BruteForce::BruteForce(const Formula& f) {
  free_ = f.free_vars();
  std::map<std::string, int> scope;
  for (const auto& v : free_) scope[v] = slots_++;
  root_ = build(f, scope);
}

int BruteForce::build(const Formula& f, std::map<std::string, int>& scope) {
  Node node;
  switch (f.kind()) {
    case Formula::Kind::Lt:
    case Formula::Kind::Eq:
    case Formula::Kind::Divides: {
      // Coefficients by probing the terms at unit vectors.
      Term t = f.kind() == Formula::Kind::Divides ? f.term() : Term::sub(f.lhs_term(), f.rhs_term());
      std::map<std::string, std::int64_t> env;
      for (const auto& [name, slot] : scope) env[name] = 0;
      Atom a;
      a.constant = eval_term(t, env);
      a.coeffs.assign(64, 0);
      for (const auto& [name, slot] : scope) {
        env[name] = 1;
        a.coeffs[slot] = eval_term(t, env) - a.constant;
        env[name] = 0;
      }
      a.kind = f.kind() == Formula::Kind::Lt ? Atom::Lt : f.kind() == Formula::Kind::Eq ? Atom::Eq : Atom::Div;
      a.modulus = f.kind() == Formula::Kind::Divides ? f.modulus().get_si() : 0;
      node.kind = Node::AtomRef;
      node.atom = static_cast<int>(atoms_.size());
      atoms_.push_back(std::move(a));
      break;
    }
    case Formula::Kind::Not:
      node.kind = Node::Not;
      node.kids.push_back(build(f.operand(), scope));
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      node.kind = f.kind() == Formula::Kind::And ? Node::And : f.kind() == Formula::Kind::Or ? Node::Or : Node::Implies;
      node.kids.push_back(build(f.left(), scope));
      node.kids.push_back(build(f.right(), scope));
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      node.kind = f.kind() == Formula::Kind::Exists ? Node::Exists : Node::Forall;
      auto saved = scope;
      node.slot = slots_++;
      if (slots_ > 64) throw std::runtime_error("too many variables");
      scope[f.bound_var()] = node.slot;
      node.kids.push_back(build(f.body(), scope));
      scope = saved;
      break;
    }
  }
  nodes_.push_back(node);
  return static_cast<int>(nodes_.size()) - 1;
}

bool BruteForce::atom_value(const Atom& a, const std::vector<std::int64_t>& env) const {
  std::int64_t s = a.constant;
  for (int i = 0; i < slots_; ++i) s += a.coeffs[i] * env[i];
  switch (a.kind) {
    case Atom::Lt:
      return s < 0;
    case Atom::Eq:
      return s == 0;
    case Atom::Div:
      return mod64(s, a.modulus) == 0;
  }
  return false;
}

void BruteForce::collect_atoms(int idx, std::vector<int>& out) const {
  const Node& n = nodes_[idx];
  if (n.kind == Node::AtomRef) out.push_back(n.atom);
  for (int k : n.kids) collect_atoms(k, out);
}

bool BruteForce::has_quantifier(int idx) const {
  const Node& n = nodes_[idx];
  if (n.kind == Node::Exists || n.kind == Node::Forall) return true;
  return std::any_of(n.kids.begin(), n.kids.end(), [&](int k) { return has_quantifier(k); });
}

bool BruteForce::eval_node(int idx, std::vector<std::int64_t>& env) const {
  const Node& n = nodes_[idx];
  switch (n.kind) {
    case Node::AtomRef:
      return atom_value(atoms_[n.atom], env);
    case Node::Not:
      return !eval_node(n.kids[0], env);
    case Node::And:
      return eval_node(n.kids[0], env) && eval_node(n.kids[1], env);
    case Node::Or:
      return eval_node(n.kids[0], env) || eval_node(n.kids[1], env);
    case Node::Implies:
      return !eval_node(n.kids[0], env) || eval_node(n.kids[1], env);
    case Node::Exists:
    case Node::Forall:
      return eval_quantifier(n, env);
  }
  return false;
}

bool BruteForce::eval_quantifier(const Node& node, std::vector<std::int64_t>& env) const {
  const bool exists = node.kind == Node::Exists;
  const int v = node.slot;
  const int body = node.kids[0];
  std::vector<int> atom_ids;
  collect_atoms(body, atom_ids);

  std::int64_t period = 1;
  for (int id : atom_ids) {
    if (atoms_[id].kind == Atom::Div) period = std::lcm(period, atoms_[id].modulus);
  }

  const std::int64_t saved = env[v];
  auto test = [&](std::int64_t value) {
    env[v] = value;
    return eval_node(body, env) == exists;
  };
  bool found = false;

  if (!has_quantifier(body)) {
    // Constant part of each atom with v removed, under the current environment.
    std::set<std::int64_t> points;
    for (int id : atom_ids) {
      const Atom& a = atoms_[id];
      const std::int64_t c = a.coeffs[v];
      if (a.kind == Atom::Div || c == 0) continue;
      std::int64_t rest = a.constant;
      for (int i = 0; i < slots_; ++i) {
        if (i != v) rest += a.coeffs[i] * env[i];
      }
      const std::int64_t lo = floor_div64(-rest, c);
      points.insert(lo);
      points.insert(lo + 1);
    }
    std::vector<std::int64_t> pts(points.begin(), points.end());
    std::vector<std::int64_t> probes;
    if (pts.empty()) {
      for (std::int64_t j = 0; j < period; ++j) probes.push_back(j);
    } else {
      for (std::int64_t j = 1; j <= period; ++j) probes.push_back(pts.front() - j);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        probes.push_back(pts[i]);
        const std::int64_t end = i + 1 < pts.size() ? pts[i + 1] : pts[i] + period + 1;
        for (std::int64_t y = pts[i] + 1; y < end && y <= pts[i] + period; ++y) probes.push_back(y);
      }
    }
    for (std::int64_t y : probes) {
      if (test(y)) {
        found = true;
        break;
      }
    }
  } else {
    // Outer quantifier over a body with one inner quantifier on slot w.
    int w = -1;
    std::vector<int> stack{body};
    while (!stack.empty()) {
      const Node& n = nodes_[stack.back()];
      stack.pop_back();
      if (n.kind == Node::Exists || n.kind == Node::Forall) w = n.slot;
      for (int k : n.kids) stack.push_back(k);
    }
    std::int64_t beta_lcm = 1;
    for (int id : atom_ids) {
      if (atoms_[id].coeffs[w] != 0) beta_lcm = std::lcm(beta_lcm, std::llabs(atoms_[id].coeffs[w]));
    }
    const std::int64_t P = period * beta_lcm;
    // Breakpoint lines y = (-alpha x - gamma) / beta, as exact rationals.
    struct Line {
      std::int64_t alpha, beta, gamma;
    };
    std::vector<Line> lines;
    long double x0 = 0;
    for (int id : atom_ids) {
      const Atom& a = atoms_[id];
      if (a.kind == Atom::Div) continue;
      std::int64_t gamma = a.constant;
      for (int i = 0; i < slots_; ++i) {
        if (i != v && i != w) gamma += a.coeffs[i] * env[i];
      }
      const std::int64_t alpha = a.coeffs[v];
      const std::int64_t beta = a.coeffs[w];
      if (beta == 0) {
        if (alpha != 0) x0 = std::max(x0, static_cast<long double>(std::llabs(gamma)) / std::llabs(alpha) + 2);
        continue;
      }
      lines.push_back({alpha, beta, gamma});
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const long double si = -static_cast<long double>(lines[i].alpha) / lines[i].beta;
        const long double sj = -static_cast<long double>(lines[j].alpha) / lines[j].beta;
        // Exact slope comparison.
        if (lines[i].alpha * lines[j].beta == lines[j].alpha * lines[i].beta) continue;
        const long double ci = -static_cast<long double>(lines[i].gamma) / lines[i].beta;
        const long double cj = -static_cast<long double>(lines[j].gamma) / lines[j].beta;
        const long double need = (period + 4 + std::fabs(ci - cj)) / std::fabs(si - sj);
        x0 = std::max(x0, need + 1);
      }
    }
    const std::int64_t limit = static_cast<std::int64_t>(x0) + 1 + P;
    for (std::int64_t k = 0; k <= limit && !found; ++k) {
      if (test(k) || (k > 0 && test(-k))) found = true;
    }
  }
  env[v] = saved;
  return exists ? found : !found;
}

bool BruteForce::eval(const std::vector<std::int64_t>& free_values) const {
  std::vector<std::int64_t> env(static_cast<std::size_t>(slots_), 0);
  for (std::size_t i = 0; i < free_values.size(); ++i) env[i] = free_values[i];
  return eval_node(root_, env);
}

}  // namespace saturator::testing

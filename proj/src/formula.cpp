// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include "saturator/formula.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "saturator/errors.hpp"

namespace saturator {

std::string_view signature_name(Signature sig) {
  switch (sig) {
    case Signature::OrderedGroup:
      return "og";
    case Signature::Presburger:
      return "pr";
    case Signature::OrderedRing:
      return "ring";
  }
  return "?";
}

std::optional<Signature> parse_signature(std::string_view name) {
  if (name == "og" || name == "doag") return Signature::OrderedGroup;
  if (name == "pr" || name == "presburger") return Signature::Presburger;
  if (name == "ring" || name == "rcf") return Signature::OrderedRing;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Terms

struct Term::Node {
  Kind kind;
  std::string name;
  Integer value;
  std::vector<Term> kids;
};

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), Integer(0), {}}));
}
Term Term::constant(Integer value) {
  return Term(std::make_shared<const Node>(Node{Kind::Const, {}, std::move(value), {}}));
}
Term Term::add(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{Kind::Add, {}, Integer(0), {std::move(lhs), std::move(rhs)}}));
}
Term Term::sub(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{Kind::Sub, {}, Integer(0), {std::move(lhs), std::move(rhs)}}));
}
Term Term::neg(Term operand) {
  return Term(std::make_shared<const Node>(Node{Kind::Neg, {}, Integer(0), {std::move(operand)}}));
}
Term Term::scale(Integer factor, Term operand) {
  return Term(std::make_shared<const Node>(Node{Kind::Scale, {}, std::move(factor), {std::move(operand)}}));
}
Term Term::mul(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(Node{Kind::Mul, {}, Integer(0), {std::move(lhs), std::move(rhs)}}));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Integer& Term::value() const { return node_->value; }
const Term& Term::lhs() const { return node_->kids.at(0); }
const Term& Term::rhs() const { return node_->kids.at(1); }

void Term::collect_vars(std::set<std::string>& out) const {
  if (node_->kind == Kind::Var) {
    out.insert(node_->name);
    return;
  }
  for (const auto& k : node_->kids) k.collect_vars(out);
}

bool Term::uses_mul() const {
  if (node_->kind == Kind::Mul) return true;
  return std::any_of(node_->kids.begin(), node_->kids.end(), [](const Term& t) { return t.uses_mul(); });
}

bool Term::uses_nonzero_constant() const {
  if (node_->kind == Kind::Const && node_->value != 0) return true;
  return std::any_of(node_->kids.begin(), node_->kids.end(),
                     [](const Term& t) { return t.uses_nonzero_constant(); });
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.name != y.name || x.value != y.value || x.kids.size() != y.kids.size()) return false;
  for (std::size_t i = 0; i < x.kids.size(); ++i) {
    if (x.kids[i] != y.kids[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Formulas

struct Formula::Node {
  Kind kind;
  std::vector<Term> terms;
  Integer modulus;
  std::string var;
  std::vector<Formula> kids;
  std::vector<std::string> free;
  std::size_t size = 1;
  bool quantifier_free = true;
};

namespace {

std::vector<std::string> merge_free(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> term_vars(std::initializer_list<const Term*> terms) {
  std::set<std::string> vars;
  for (const Term* t : terms) t->collect_vars(vars);
  return {vars.begin(), vars.end()};
}

}  // namespace

Formula Formula::lt(Term lhs, Term rhs) {
  Node n{Kind::Lt, {lhs, rhs}, Integer(0), {}, {}, term_vars({&lhs, &rhs})};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::eq(Term lhs, Term rhs) {
  Node n{Kind::Eq, {lhs, rhs}, Integer(0), {}, {}, term_vars({&lhs, &rhs})};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::divides(Integer modulus, Term term) {
  if (modulus < 2) throw DomainError("P_n requires n >= 2");
  Node n{Kind::Divides, {term}, std::move(modulus), {}, {}, term_vars({&term})};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::negation(Formula operand) {
  Node n{Kind::Not, {}, Integer(0), {}, {operand}, operand.free_vars()};
  n.size = operand.size() + 1;
  n.quantifier_free = operand.is_quantifier_free();
  return Formula(std::make_shared<const Node>(std::move(n)));
}

namespace {

template <class NodeT, class FormulaT>
NodeT binary_node(typename FormulaT::Kind kind, const FormulaT& lhs, const FormulaT& rhs) {
  NodeT n{kind, {}, Integer(0), {}, {lhs, rhs}, merge_free(lhs.free_vars(), rhs.free_vars())};
  n.size = lhs.size() + rhs.size() + 1;
  n.quantifier_free = lhs.is_quantifier_free() && rhs.is_quantifier_free();
  return n;
}

}  // namespace

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(binary_node<Node, Formula>(Kind::And, lhs, rhs)));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(binary_node<Node, Formula>(Kind::Or, lhs, rhs)));
}
Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(binary_node<Node, Formula>(Kind::Implies, lhs, rhs)));
}

Formula Formula::exists(std::string var, Formula body) {
  std::vector<std::string> free = body.free_vars();
  free.erase(std::remove(free.begin(), free.end(), var), free.end());
  Node n{Kind::Exists, {}, Integer(0), std::move(var), {body}, std::move(free)};
  n.size = body.size() + 1;
  n.quantifier_free = false;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::forall(std::string var, Formula body) {
  std::vector<std::string> free = body.free_vars();
  free.erase(std::remove(free.begin(), free.end(), var), free.end());
  Node n{Kind::Forall, {}, Integer(0), std::move(var), {body}, std::move(free)};
  n.size = body.size() + 1;
  n.quantifier_free = false;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::truth() { return eq(Term::constant(0), Term::constant(0)); }
Formula Formula::falsity() { return lt(Term::constant(0), Term::constant(0)); }

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::is_atomic() const {
  return node_->kind == Kind::Lt || node_->kind == Kind::Eq || node_->kind == Kind::Divides;
}
bool Formula::is_quantifier() const { return node_->kind == Kind::Exists || node_->kind == Kind::Forall; }
const Term& Formula::lhs_term() const { return node_->terms.at(0); }
const Term& Formula::rhs_term() const { return node_->terms.at(1); }
const Term& Formula::term() const { return node_->terms.at(0); }
const Integer& Formula::modulus() const { return node_->modulus; }
const Formula& Formula::operand() const { return node_->kids.at(0); }
const Formula& Formula::left() const { return node_->kids.at(0); }
const Formula& Formula::right() const { return node_->kids.at(1); }
const std::string& Formula::bound_var() const { return node_->var; }
const Formula& Formula::body() const { return node_->kids.at(0); }
const std::vector<std::string>& Formula::free_vars() const { return node_->free; }
bool Formula::is_quantifier_free() const { return node_->quantifier_free; }
std::size_t Formula::size() const { return node_->size; }

bool Formula::is_nnf() const {
  switch (node_->kind) {
    case Kind::Lt:
    case Kind::Eq:
    case Kind::Divides:
      return true;
    case Kind::Not:
      return operand().is_atomic();
    case Kind::Implies:
      return false;
    case Kind::And:
    case Kind::Or:
      return left().is_nnf() && right().is_nnf();
    case Kind::Exists:
    case Kind::Forall:
      return body().is_nnf();
  }
  return false;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.modulus != y.modulus || x.var != y.var || x.terms.size() != y.terms.size() ||
      x.kids.size() != y.kids.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.terms.size(); ++i) {
    if (x.terms[i] != y.terms[i]) return false;
  }
  for (std::size_t i = 0; i < x.kids.size(); ++i) {
    if (x.kids[i] != y.kids[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Variable naming

namespace {

constexpr std::string_view kTail = "abcdefghijklmnopqrstuvwxyz0123456789";

}  // namespace

bool is_variable_name(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
  });
}

std::string variable_name(const Integer& index) {
  if (index < 0) throw DecodeError("negative variable index");
  Integer first = mod(index, 26);
  Integer rest = index / 26;
  std::string suffix;
  while (rest > 0) {
    rest -= 1;
    Integer digit = mod(rest, 36);
    suffix.push_back(kTail[digit.get_ui()]);
    rest /= 36;
  }
  std::reverse(suffix.begin(), suffix.end());
  return std::string(1, static_cast<char>('a' + first.get_ui())) + suffix;
}

Integer variable_index(std::string_view name) {
  if (!is_variable_name(name)) throw DomainError("not a variable name: '" + std::string(name) + "'");
  Integer rest = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    const auto digit = kTail.find(name[i]);
    rest = rest * 36 + static_cast<unsigned long>(digit) + 1;
  }
  return Integer(rest * 26 + (name[0] - 'a'));
}

std::string slot_name(std::size_t slot) { return variable_name(Integer(static_cast<unsigned long>(slot))); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Int, Pred, Exists, Forall, LParen, RParen, Dot, And, Or, Not, Arrow, Lt, Eq, Plus, Minus, Star, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (c >= 'a' && c <= 'z') {
      while (i < s.size() && ((s[i] >= 'a' && s[i] <= 'z') || (s[i] >= '0' && s[i] <= '9'))) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (c >= '0' && c <= '9') {
      while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
      out.push_back({Tok::Int, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (c == 'P') {
      ++i;
      while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
      if (i == start + 1) throw ParseError("predicate P needs a numeric index", start);
      out.push_back({Tok::Pred, std::string(s.substr(start + 1, i - start - 1)), start});
      continue;
    }
    if (c == 'E' || c == 'A') {
      ++i;
      out.push_back({c == 'E' ? Tok::Exists : Tok::Forall, std::string(1, c), start});
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      i += 2;
      out.push_back({Tok::Arrow, "->", start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '.': kind = Tok::Dot; break;
      case '&': kind = Tok::And; break;
      case '|': kind = Tok::Or; break;
      case '!': kind = Tok::Not; break;
      case '<': kind = Tok::Lt; break;
      case '=': kind = Tok::Eq; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    ++i;
    out.push_back({kind, std::string(1, c), start});
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

// Thrown internally when a speculative term parse fails; the parser backtracks.
struct Backtrack {};

class Parser {
 public:
  Parser(std::string_view text, Signature sig) : tokens_(tokenize(text)), sig_(sig) {}

  Formula parse_formula_all() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Term parse_term_all() {
    Term t = term(false);
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) throw ParseError(std::string("expected ") + what, peek().pos);
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implication(lhs, formula());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Or)) f = Formula::disjunction(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::And)) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (peek().kind == Tok::Exists || peek().kind == Tok::Forall) {
      const bool ex = peek().kind == Tok::Exists;
      ++pos_;
      if (peek().kind != Tok::Ident) throw ParseError("expected a variable after quantifier", peek().pos);
      std::string var = peek().text;
      ++pos_;
      expect(Tok::Dot, "'.' after quantified variable");
      Formula body = formula();
      return ex ? Formula::exists(var, body) : Formula::forall(var, body);
    }
    if (peek().kind == Tok::LParen) {
      const std::size_t save = pos_;
      try {
        return atom(true);
      } catch (const Backtrack&) {
        pos_ = save;
      }
      expect(Tok::LParen, "'('");
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return atom(false);
  }

  // When `speculative` is set, failures that could be explained by the '(' opening a
  // formula rather than a term raise Backtrack instead of a ParseError.
  Formula atom(bool speculative) {
    if (peek().kind == Tok::Pred) {
      const Token tok = peek();
      ++pos_;
      if (sig_ != Signature::Presburger) {
        throw SignatureError("divisibility predicate P" + tok.text + " is not in the " +
                             std::string(signature_name(sig_)) + " signature");
      }
      Integer n(tok.text, 10);
      if (n < 2) throw ParseError("predicate index must be at least 2", tok.pos);
      if (n > 1000000) throw ParseError("predicate index exceeds 10^6", tok.pos);
      expect(Tok::LParen, "'(' after predicate");
      Term t = term(false);
      expect(Tok::RParen, "')'");
      return Formula::divides(n, t);
    }
    Term lhs = term(speculative);
    if (accept(Tok::Lt)) return Formula::lt(lhs, term(false));
    if (accept(Tok::Eq)) return Formula::eq(lhs, term(false));
    if (speculative) throw Backtrack{};
    throw ParseError("expected '<' or '='", peek().pos);
  }

  Term term(bool speculative) {
    Term t = product(speculative);
    for (;;) {
      if (accept(Tok::Plus)) {
        t = Term::add(t, product(speculative));
      } else if (peek().kind == Tok::Minus) {
        ++pos_;
        t = Term::sub(t, product(speculative));
      } else {
        return t;
      }
    }
  }

  Term product(bool speculative) {
    const std::size_t start = peek().pos;
    Term t = factor(speculative);
    if (peek().kind != Tok::Star) {
      check_constant(t, start);
      return t;
    }
    while (peek().kind == Tok::Star) {
      const std::size_t star = peek().pos;
      ++pos_;
      Term rhs = factor(speculative);
      if (sig_ == Signature::OrderedRing) {
        t = Term::mul(t, rhs);
      } else {
        if (t.kind() != Term::Kind::Const) {
          if (rhs.uses_mul() || rhs.kind() != Term::Kind::Const) {
            throw SignatureError("multiplication of non-literal terms is not in the " +
                                 std::string(signature_name(sig_)) + " signature (position " +
                                 std::to_string(star) + ")");
          }
          throw ParseError("scalar factor must be written on the left of '*'", star);
        }
        check_constant(rhs, star + 1);
        t = Term::scale(t.value(), rhs);
      }
    }
    return t;
  }

  Term factor(bool speculative) {
    const Token tok = peek();
    switch (tok.kind) {
      case Tok::Minus: {
        ++pos_;
        if (peek().kind == Tok::Int) {
          Integer v(peek().text, 10);
          ++pos_;
          return Term::constant(Integer(-v));
        }
        return Term::neg(factor(speculative));
      }
      case Tok::Int: {
        ++pos_;
        return Term::constant(Integer(tok.text, 10));
      }
      case Tok::Ident:
        ++pos_;
        return Term::var(tok.text);
      case Tok::LParen: {
        ++pos_;
        Term t = term(speculative);
        if (!accept(Tok::RParen)) {
          if (speculative) throw Backtrack{};
          throw ParseError("expected ')'", peek().pos);
        }
        return t;
      }
      default:
        if (speculative) throw Backtrack{};
        throw ParseError("expected a term", tok.pos);
    }
  }

  // Literals are scalar factors in the og signature; only 0 may stand alone.
  void check_constant(const Term& t, std::size_t pos) const {
    if (sig_ == Signature::OrderedGroup && t.kind() == Term::Kind::Const && t.value() != 0) {
      throw SignatureError("constant " + t.value().get_str() + " is not in the og signature (position " +
                           std::to_string(pos) + ")");
    }
  }

  std::vector<Token> tokens_;
  Signature sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, Signature sig) {
  Parser p(text, sig);
  Formula f = p.parse_formula_all();
  check_signature(f, sig);
  return f;
}

Term parse_term(std::string_view text, Signature sig) {
  Parser p(text, sig);
  Term t = p.parse_term_all();
  check_signature(t, sig);
  return t;
}

void check_signature(const Term& term, Signature sig) {
  switch (term.kind()) {
    case Term::Kind::Var:
      if (!is_variable_name(term.name())) throw DomainError("bad variable name '" + term.name() + "'");
      return;
    case Term::Kind::Const:
      if (sig == Signature::OrderedGroup && term.value() != 0) {
        throw SignatureError("constant " + term.value().get_str() + " is not in the og signature");
      }
      return;
    case Term::Kind::Scale:
      if (sig == Signature::OrderedRing) throw SignatureError("scalar nodes are not used in the ring signature");
      check_signature(term.lhs(), sig);
      return;
    case Term::Kind::Mul:
      if (sig != Signature::OrderedRing) {
        throw SignatureError("multiplication is not in the " + std::string(signature_name(sig)) + " signature");
      }
      check_signature(term.lhs(), sig);
      check_signature(term.rhs(), sig);
      return;
    case Term::Kind::Neg:
      check_signature(term.lhs(), sig);
      return;
    case Term::Kind::Add:
    case Term::Kind::Sub:
      check_signature(term.lhs(), sig);
      check_signature(term.rhs(), sig);
      return;
  }
}

void check_signature(const Formula& f, Signature sig) {
  switch (f.kind()) {
    case Formula::Kind::Lt:
    case Formula::Kind::Eq:
      check_signature(f.lhs_term(), sig);
      check_signature(f.rhs_term(), sig);
      return;
    case Formula::Kind::Divides:
      if (sig != Signature::Presburger) {
        throw SignatureError("divisibility predicates are not in the " + std::string(signature_name(sig)) +
                             " signature");
      }
      check_signature(f.term(), sig);
      return;
    case Formula::Kind::Not:
      check_signature(f.operand(), sig);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      check_signature(f.left(), sig);
      check_signature(f.right(), sig);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      if (!is_variable_name(f.bound_var())) throw DomainError("bad variable name '" + f.bound_var() + "'");
      check_signature(f.body(), sig);
      return;
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Term precedence: 1 sum, 2 product, 3 factor.
int term_prec(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Add:
    case Term::Kind::Sub:
      return 1;
    case Term::Kind::Scale:
    case Term::Kind::Mul:
      return 2;
    default:
      return 3;
  }
}

void print_term(const Term& t, int min_prec, std::string& out);

void print_term_paren(const Term& t, int min_prec, std::string& out) {
  if (term_prec(t) < min_prec) {
    out += '(';
    print_term(t, 1, out);
    out += ')';
  } else {
    print_term(t, min_prec, out);
  }
}

void print_term(const Term& t, int /*min_prec*/, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::Const:
      out += t.value().get_str();
      return;
    case Term::Kind::Add:
    case Term::Kind::Sub:
      print_term_paren(t.lhs(), 1, out);
      out += t.kind() == Term::Kind::Add ? " + " : " - ";
      print_term_paren(t.rhs(), 2, out);
      return;
    case Term::Kind::Neg:
      out += '-';
      if (t.lhs().kind() == Term::Kind::Const && t.lhs().value() >= 0) {
        out += '(' + t.lhs().value().get_str() + ')';
      } else {
        print_term_paren(t.lhs(), 3, out);
      }
      return;
    case Term::Kind::Scale:
      out += t.value().get_str();
      out += '*';
      print_term_paren(t.lhs(), 3, out);
      return;
    case Term::Kind::Mul:
      print_term_paren(t.lhs(), 2, out);
      out += '*';
      print_term_paren(t.rhs(), 3, out);
      return;
  }
}

// Formula precedence: 1 implication, 2 disjunction, 3 conjunction, 4 unary/atomic.
int formula_prec(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Implies:
      return 1;
    case Formula::Kind::Or:
      return 2;
    case Formula::Kind::And:
      return 3;
    default:
      return 4;
  }
}

// True when the printed text of f ends in an unparenthesized quantifier body.
bool ends_open(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return true;
    case Formula::Kind::Not:
      return ends_open(f.operand());
    default:
      return false;
  }
}

void print_formula(const Formula& f, std::string& out);

// `closed` is set when more text follows, so an open quantifier must be parenthesized.
void print_operand(const Formula& f, int min_prec, bool closed, std::string& out) {
  bool paren = formula_prec(f) < min_prec;
  if (!paren && closed && formula_prec(f) == 4 && ends_open(f)) paren = true;
  if (!paren && closed && formula_prec(f) < 4) {
    // A binary operand whose own right spine ends in a quantifier.
    const Formula* spine = &f;
    while (formula_prec(*spine) < 4) spine = &spine->right();
    if (ends_open(*spine)) paren = true;
  }
  if (paren) out += '(';
  print_formula(f, out);
  if (paren) out += ')';
}

void print_formula(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Lt:
    case Formula::Kind::Eq:
      print_term(f.lhs_term(), 1, out);
      out += f.kind() == Formula::Kind::Lt ? " < " : " = ";
      print_term(f.rhs_term(), 1, out);
      return;
    case Formula::Kind::Divides:
      out += 'P';
      out += f.modulus().get_str();
      out += '(';
      print_term(f.term(), 1, out);
      out += ')';
      return;
    case Formula::Kind::Not:
      out += '!';
      print_operand(f.operand(), 4, false, out);
      return;
    case Formula::Kind::And:
      print_operand(f.left(), 3, true, out);
      out += " & ";
      print_operand(f.right(), 4, false, out);
      return;
    case Formula::Kind::Or:
      print_operand(f.left(), 2, true, out);
      out += " | ";
      print_operand(f.right(), 3, false, out);
      return;
    case Formula::Kind::Implies:
      print_operand(f.left(), 2, true, out);
      out += " -> ";
      print_operand(f.right(), 1, false, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      out += f.kind() == Formula::Kind::Exists ? "E " : "A ";
      out += f.bound_var();
      out += ". ";
      const Formula& body = f.body();
      if (formula_prec(body) < 4) {
        out += '(';
        print_formula(body, out);
        out += ')';
      } else {
        print_formula(body, out);
      }
      return;
    }
  }
}

}  // namespace

std::string to_string(const Term& term) {
  std::string out;
  print_term(term, 1, out);
  return out;
}

std::string to_string(const Formula& formula) {
  std::string out;
  print_formula(formula, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

Term substitute(const Term& term, const std::string& var, const Term& replacement) {
  switch (term.kind()) {
    case Term::Kind::Var:
      return term.name() == var ? replacement : term;
    case Term::Kind::Const:
      return term;
    case Term::Kind::Add:
      return Term::add(substitute(term.lhs(), var, replacement), substitute(term.rhs(), var, replacement));
    case Term::Kind::Sub:
      return Term::sub(substitute(term.lhs(), var, replacement), substitute(term.rhs(), var, replacement));
    case Term::Kind::Mul:
      return Term::mul(substitute(term.lhs(), var, replacement), substitute(term.rhs(), var, replacement));
    case Term::Kind::Neg:
      return Term::neg(substitute(term.lhs(), var, replacement));
    case Term::Kind::Scale:
      return Term::scale(term.value(), substitute(term.lhs(), var, replacement));
  }
  return term;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && stem.back() >= '0' && stem.back() <= '9' && stem.size() > 1) stem.pop_back();
  for (unsigned long i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

bool occurs_free(const Formula& f, const std::string& var) {
  const auto& fv = f.free_vars();
  return std::binary_search(fv.begin(), fv.end(), var);
}

}  // namespace

Formula substitute(const Formula& f, const std::string& var, const Term& replacement) {
  if (!occurs_free(f, var)) return f;
  switch (f.kind()) {
    case Formula::Kind::Lt:
      return Formula::lt(substitute(f.lhs_term(), var, replacement), substitute(f.rhs_term(), var, replacement));
    case Formula::Kind::Eq:
      return Formula::eq(substitute(f.lhs_term(), var, replacement), substitute(f.rhs_term(), var, replacement));
    case Formula::Kind::Divides:
      return Formula::divides(f.modulus(), substitute(f.term(), var, replacement));
    case Formula::Kind::Not:
      return Formula::negation(substitute(f.operand(), var, replacement));
    case Formula::Kind::And:
      return Formula::conjunction(substitute(f.left(), var, replacement), substitute(f.right(), var, replacement));
    case Formula::Kind::Or:
      return Formula::disjunction(substitute(f.left(), var, replacement), substitute(f.right(), var, replacement));
    case Formula::Kind::Implies:
      return Formula::implication(substitute(f.left(), var, replacement), substitute(f.right(), var, replacement));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::set<std::string> repl_vars;
      replacement.collect_vars(repl_vars);
      std::string bound = f.bound_var();
      Formula body = f.body();
      if (repl_vars.count(bound)) {
        std::set<std::string> avoid = repl_vars;
        avoid.insert(body.free_vars().begin(), body.free_vars().end());
        avoid.insert(var);
        std::string renamed = fresh_name(bound, avoid);
        body = substitute(body, bound, Term::var(renamed));
        bound = renamed;
      }
      body = substitute(body, var, replacement);
      return f.kind() == Formula::Kind::Exists ? Formula::exists(bound, body) : Formula::forall(bound, body);
    }
  }
  return f;
}

}  // namespace saturator

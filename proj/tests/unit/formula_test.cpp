// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>
#include <set>
#include <unordered_set>

#include "saturator/coding.hpp"
#include "saturator/errors.hpp"
#include "saturator/formula.hpp"

namespace saturator {
namespace {

constexpr Signature kPr = Signature::Presburger;
constexpr Signature kOg = Signature::OrderedGroup;
constexpr Signature kRing = Signature::OrderedRing;

TEST(Parse, QuantifiedDivisibility) {
  Formula f = parse_formula("E v. (P2(v) & a < v)", kPr);
  ASSERT_EQ(f.kind(), Formula::Kind::Exists);
  EXPECT_EQ(f.bound_var(), "v");
  EXPECT_EQ(f.body().kind(), Formula::Kind::And);
  EXPECT_EQ(f.body().left().kind(), Formula::Kind::Divides);
  EXPECT_EQ(f.body().left().modulus(), 2);
  EXPECT_EQ(f.free_vars(), std::vector<std::string>{"a"});
}

TEST(Parse, ValidityNotChecked) {
  Formula f = parse_formula("x + 1 < x", kPr);
  EXPECT_EQ(f.kind(), Formula::Kind::Lt);
  EXPECT_EQ(to_string(f), "x + 1 < x");
}

TEST(Parse, SignatureErrors) {
  EXPECT_THROW(parse_formula("P2(x*y)", kPr), SignatureError);
  EXPECT_THROW(parse_formula("P2(x) & 0 < x", kOg), SignatureError);
  EXPECT_THROW(parse_formula("P2(x)", kRing), SignatureError);
  EXPECT_THROW(parse_formula("1 < x", kOg), SignatureError);
  EXPECT_NO_THROW(parse_formula("0 < 2*x - 3*y", kOg));
  EXPECT_NO_THROW(parse_formula("x*y < 1 + x*x*x", kRing));
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  try {
    parse_formula("a < b &", kPr);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
  EXPECT_THROW(parse_formula("a <", kPr), ParseError);
  EXPECT_THROW(parse_formula("(a < b", kPr), ParseError);
  EXPECT_THROW(parse_formula("a # b", kPr), ParseError);
  EXPECT_THROW(parse_formula("P1(a)", kPr), ParseError);
  EXPECT_THROW(parse_formula("P2000000(a)", kPr), ParseError);
  EXPECT_THROW(parse_formula("E . a < b", kPr), ParseError);
}

TEST(Parse, NegativeLiteralsAndNegation) {
  Term t = parse_term("-3", kPr);
  EXPECT_EQ(t.kind(), Term::Kind::Const);
  EXPECT_EQ(t.value(), -3);
  Term n = parse_term("-(3)", kPr);
  EXPECT_EQ(n.kind(), Term::Kind::Neg);
  EXPECT_EQ(to_string(n), "-(3)");
  EXPECT_EQ(to_string(parse_term("a - -3", kPr)), "a - -3");
  EXPECT_EQ(to_string(parse_term("-3*x", kPr)), "-3*x");
}

TEST(Parse, ParenthesizedAtomsAndFormulas) {
  EXPECT_EQ(parse_formula("(a + b) < c", kPr).kind(), Formula::Kind::Lt);
  EXPECT_EQ(parse_formula("((a < b))", kPr).kind(), Formula::Kind::Lt);
  EXPECT_EQ(parse_formula("((a) < b) | a = b", kPr).kind(), Formula::Kind::Or);
}

TEST(Print, Precedence) {
  const char* texts[] = {
      "a < b & b < c | c < a",
      "(a < b | b < c) & c < a",
      "a < b -> b < c -> c < a",
      "(a < b -> b < c) -> c < a",
      "!(a < b & b < c)",
      "(E v. v < a) & a < b",
      "(!A v. v < a) | a = b",
      "a < b & E v. (v < a | b < v)",
      "2*(a + b) - (c - d) < -(a - b)",
      "A x. E y. (x < y & P3(y - x))",
  };
  for (const char* text : texts) {
    EXPECT_EQ(to_string(parse_formula(text, kPr)), text);
  }
}

TEST(Substitute, Simple) {
  Formula f = parse_formula("v < w", kPr);
  Formula g = substitute(f, "w", parse_term("a + 1", kPr));
  EXPECT_EQ(to_string(g), "v < a + 1");
}

TEST(Substitute, AvoidsCapture) {
  Formula f = parse_formula("E v. v < w", kPr);
  Formula g = substitute(f, "w", Term::var("v"));
  EXPECT_EQ(to_string(g), "E v1. v1 < v");
  EXPECT_EQ(g.free_vars(), std::vector<std::string>{"v"});
}

TEST(Substitute, BoundOccurrencesUntouched) {
  Formula f = parse_formula("E v. v < a", kPr);
  EXPECT_EQ(substitute(f, "v", Term::constant(3)), f);
}

TEST(VariableNames, Bijection) {
  for (unsigned long i = 0; i < 5000; ++i) {
    std::string name = variable_name(Integer(i));
    EXPECT_TRUE(is_variable_name(name));
    EXPECT_EQ(variable_index(name), i);
  }
  EXPECT_EQ(variable_name(0), "a");
  EXPECT_EQ(variable_name(26), "aa");
  EXPECT_EQ(variable_name(27), "ba");
  EXPECT_EQ(slot_name(2), "c");
}

// Naive free-variable computation, independent of the cached lists.
void naive_free(const Formula& f, std::set<std::string> bound, std::set<std::string>& out) {
  auto add_term = [&](const Term& t) {
    std::set<std::string> vs;
    t.collect_vars(vs);
    for (const auto& v : vs) {
      if (!bound.count(v)) out.insert(v);
    }
  };
  switch (f.kind()) {
    case Formula::Kind::Lt:
    case Formula::Kind::Eq:
      add_term(f.lhs_term());
      add_term(f.rhs_term());
      return;
    case Formula::Kind::Divides:
      add_term(f.term());
      return;
    case Formula::Kind::Not:
      naive_free(f.operand(), bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      naive_free(f.left(), bound, out);
      naive_free(f.right(), bound, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      bound.insert(f.bound_var());
      naive_free(f.body(), bound, out);
      return;
  }
}

class CodingSweep : public ::testing::TestWithParam<Signature> {};

TEST_P(CodingSweep, DecodeEncodeRoundTrip) {
  const Signature sig = GetParam();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<unsigned long> small(0, 5000);
  for (int i = 0; i < 10000; ++i) {
    Integer c = i < 5000 ? Integer(static_cast<unsigned long>(i)) : Integer(small(rng)) * Integer(small(rng)) + small(rng);
    Formula f = decode(c, sig);
    ASSERT_EQ(encode(f, sig), c) << to_string(f);
  }
}

TEST_P(CodingSweep, PrintParseRoundTripOnDecodedFormulas) {
  const Signature sig = GetParam();
  for (unsigned long c = 0; c < 10000; ++c) {
    Formula f = decode(Integer(c), sig);
    const std::string text = to_string(f);
    Formula g = parse_formula(text, sig);
    ASSERT_EQ(f, g) << text;
    ASSERT_EQ(to_string(g), text);
  }
}

TEST_P(CodingSweep, FreeVariablesAgreeWithNaiveRecursion) {
  const Signature sig = GetParam();
  for (unsigned long c = 0; c < 10000; c += 7) {
    Formula f = decode(Integer(c), sig);
    std::set<std::string> naive;
    naive_free(f, {}, naive);
    ASSERT_EQ(f.free_vars(), std::vector<std::string>(naive.begin(), naive.end()));
  }
}

TEST_P(CodingSweep, JsonAstRoundTrip) {
  const Signature sig = GetParam();
  for (unsigned long c = 0; c < 10000; c += 3) {
    Formula f = decode(Integer(c), sig);
    ASSERT_EQ(formula_from_json_text(to_json_text(f), sig), f) << to_string(f);
  }
}

INSTANTIATE_TEST_SUITE_P(AllSignatures, CodingSweep, ::testing::Values(kPr, kOg, kRing));

TEST(Coding, DivisibilityAtom) {
  Formula f = parse_formula("P2(v)", kPr);
  EXPECT_EQ(decode(encode(f, kPr), kPr), f);
}

TEST(Coding, InjectiveOnEnumeratedFormulas) {
  // Enumerate 10^4 distinct formulas by printing decoded codes; texts identify trees.
  std::unordered_set<std::string> codes;
  std::set<std::string> texts;
  for (unsigned long c = 0; c < 10000; ++c) {
    Formula f = decode(Integer(c), kPr);
    texts.insert(to_string(f));
    codes.insert(encode(f, kPr).get_str());
  }
  EXPECT_EQ(texts.size(), 10000u);
  EXPECT_EQ(codes.size(), 10000u);
}

TEST(Coding, NegativeCodesRejected) {
  EXPECT_THROW(decode(Integer(-1), kPr), DecodeError);
  EXPECT_THROW(decode_term(Integer(-5), kOg), DecodeError);
}

// Code-level substitution: walks the code structure directly and replaces the code of
// the variable by the code of the replacement term.  Only used where no capture occurs.
Integer subst_term_code(const Integer& c, const Integer& var_code, const Integer& repl) {
  if (c == var_code) return repl;
  Integer tag = c % 6;
  Integer payload = c / 6;
  switch (tag.get_ui()) {
    case 2:
    case 3: {
      auto [l, r] = unpair(payload);
      return pair(subst_term_code(l, var_code, repl), subst_term_code(r, var_code, repl)) * 6 + tag;
    }
    case 4:
      return subst_term_code(payload, var_code, repl) * 6 + tag;
    case 5: {
      auto [k, t] = unpair(payload);
      return pair(k, subst_term_code(t, var_code, repl)) * 6 + tag;
    }
    default:
      return c;
  }
}

Integer subst_formula_code(const Integer& c, const Integer& var_index, const Integer& var_code,
                           const Integer& repl) {
  Integer tag = c % 9;
  Integer payload = c / 9;
  auto [l, r] = unpair(payload);
  switch (tag.get_ui()) {
    case 0:
    case 1:
      return pair(subst_term_code(l, var_code, repl), subst_term_code(r, var_code, repl)) * 9 + tag;
    case 2:
      return pair(l, subst_term_code(r, var_code, repl)) * 9 + tag;
    case 3:
      return subst_formula_code(payload, var_index, var_code, repl) * 9 + tag;
    case 4:
    case 5:
    case 6:
      return pair(subst_formula_code(l, var_index, var_code, repl), subst_formula_code(r, var_index, var_code, repl)) *
                 9 +
             tag;
    default:
      if (l == var_index) return c;
      return pair(l, subst_formula_code(r, var_index, var_code, repl)) * 9 + tag;
  }
}

bool binds_any(const Formula& f, const std::set<std::string>& names) {
  switch (f.kind()) {
    case Formula::Kind::Not:
      return binds_any(f.operand(), names);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return binds_any(f.left(), names) || binds_any(f.right(), names);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return names.count(f.bound_var()) || binds_any(f.body(), names);
    default:
      return false;
  }
}

TEST(Coding, SubstitutionCommutesWithEncoding) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<unsigned long> code(0, 200000);
  int checked = 0;
  while (checked < 100) {
    Formula f = decode(Integer(code(rng)), kPr);
    if (f.free_vars().empty()) continue;
    const std::string var = f.free_vars().front();
    Term repl = decode_term(Integer(code(rng) % 3000), kPr);
    std::set<std::string> repl_vars;
    repl.collect_vars(repl_vars);
    if (binds_any(f, repl_vars)) continue;
    Integer via_ast = encode(substitute(f, var, repl), kPr);
    Integer via_code = subst_formula_code(encode(f, kPr), variable_index(var), encode(Term::var(var), kPr),
                                          encode(repl, kPr));
    ASSERT_EQ(via_ast, via_code) << to_string(f);
    ++checked;
  }
}

TEST(JsonAst, Shape) {
  EXPECT_EQ(to_json_text(parse_formula("P2(2*a - 1)", kPr)),
            R"({"args":[{"args":[{"args":[{"var":"a"}],"factor":"2","op":"scale"},{"const":"1"}],"op":"sub"}],)"
            R"("modulus":"2","op":"divides"})");
  EXPECT_EQ(to_json_text(parse_formula("E v. v = 0", kOg)),
            R"({"body":{"args":[{"var":"v"},{"const":"0"}],"op":"eq"},"op":"exists","var":"v"})");
}

TEST(JsonAst, SchemaErrorsCarryPointers) {
  auto pointer_of = [](const std::string& text) {
    try {
      formula_from_json_text(text, kPr);
    } catch (const SchemaError& e) {
      return e.pointer();
    }
    return std::string("none");
  };
  EXPECT_EQ(pointer_of(R"({"op":"and","args":[{"op":"lt","args":[{"var":"a"},{"const":"x"}]},{"op":"lt"}]})"),
            "/args/0/args/1/const");
  EXPECT_EQ(pointer_of(R"({"op":"exists","var":"v","body":{"op":"divides","modulus":"1","args":[{"var":"v"}]}})"),
            "/body/modulus");
  EXPECT_EQ(pointer_of(R"({"op":"xor"})"), "/op");
  EXPECT_THROW(formula_from_json_text(R"({"op":"lt","args":[{"op":"mul","args":[{"var":"a"},{"var":"b"}]},{"const":"0"}]})", kPr),
               SignatureError);
}

}  // namespace
}  // namespace saturator

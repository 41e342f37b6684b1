// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include "saturator/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "saturator/coding.hpp"
#include "saturator/doag.hpp"
#include "saturator/errors.hpp"
#include "saturator/presburger.hpp"
#include "saturator/rcf.hpp"
#include "saturator/tree_check.hpp"
#include "saturator/zgroup.hpp"
#include "zgroup_internal.hpp"

namespace saturator {

namespace {

using json = nlohmann::json;

class InputError : public Error {
 public:
  using Error::Error;
};

Signature signature_arg(const std::string& name) {
  const auto sig = parse_signature(name);
  if (!sig) throw InputError("unknown signature '" + name + "'");
  return *sig;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text << "\n";
}

ElementAssignment generator_names(const ZModel& model) {
  ElementAssignment out;
  for (std::size_t i = 0; i < model.size(); ++i) out.emplace(model.generators()[i].name, model.generator(i));
  return out;
}

// "TERM" or "TERM/m" with TERM a linear term.
std::pair<LinearTerm, Integer> split_quotient(const std::string& text) {
  const auto slash = text.rfind('/');
  Integer m = 1;
  std::string body = text;
  if (slash != std::string::npos && text.find(')', slash) == std::string::npos) {
    m = parse_integer(text.substr(slash + 1));
    body = text.substr(0, slash);
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    if (m < 1) throw InputError("divisor must be positive in '" + text + "'");
  }
  return {LinearTerm::from_term(parse_term(body, Signature::Presburger)), m};
}

ModelElement parse_element(const ZModel& model, const std::string& text) {
  const auto [term, m] = split_quotient(text);
  return model.divide(model.linear(term, generator_names(model)), m);
}

std::pair<std::string, std::string> split_binding(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw InputError("expected NAME=VALUE, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

ResidueProfile parse_profile(const std::string& descriptor) {
  if (!descriptor.empty() && descriptor.front() == '{') return ResidueProfile::from_json_text(descriptor);
  const auto colon = descriptor.find(':');
  const std::string kind = descriptor.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  if (kind == "zero") return ResidueProfile::standard(0);
  if (kind == "standard") return ResidueProfile::standard(parse_integer(rest));
  if (kind == "factorial") {
    if (rest.empty()) return ResidueProfile::factorial();
    const auto c = rest.find(':');
    if (c == std::string::npos) return ResidueProfile::factorial(parse_integer(rest));
    return ResidueProfile::factorial(parse_integer(rest.substr(0, c)), parse_integer(rest.substr(c + 1)));
  }
  if (kind == "prefix") {
    std::vector<DivConstraint> cs;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto mod_at = item.find("mod");
      if (mod_at == std::string::npos) throw InputError("prefix entries look like 1mod2, got '" + item + "'");
      cs.push_back({parse_integer(item.substr(0, mod_at)), parse_integer(item.substr(mod_at + 3))});
    }
    return ResidueProfile::prefix(std::move(cs));
  }
  throw InputError("unknown profile '" + descriptor + "'");
}

json model_json(const ZModel& model) { return json::parse(model.to_json_text()); }

json qe_command(Signature sig, const std::string& text) {
  if (sig != Signature::Presburger) throw InputError("qe supports --sig pr only");
  const Qff q = cooper_qe(parse_formula(text, sig));
  const Formula f = q.to_formula();
  return {{"ast", json::parse(to_json_text(f))}, {"literals", q.literal_count()}, {"qff", to_string(f)}};
}

json decide_command(Signature sig, const std::string& text, const std::string& model_path,
                    const std::vector<std::string>& elements) {
  const Formula f = parse_formula(text, sig);
  if (!model_path.empty()) {
    if (sig != Signature::Presburger) throw InputError("--model requires --sig pr");
    const ZModel model = ZModel::from_json_text(read_file(model_path));
    ElementAssignment values;
    for (const auto& e : elements) {
      auto [name, value] = split_binding(e);
      values.insert_or_assign(name, parse_element(model, value));
    }
    return {{"value", model.decide(f, values)}};
  }
  if (!elements.empty()) throw InputError("--element requires --model");
  if (!f.free_vars().empty()) throw InputError("decide without --model needs a sentence");
  switch (sig) {
    case Signature::Presburger:
      return {{"value", decide_standard(f)}};
    case Signature::OrderedGroup:
      return {{"value", decide_linear_sentence(f)}};
    case Signature::OrderedRing:
      return {{"value", algebraic_type({}).contains(f)}};
  }
  return {};
}

json normal_form_command(Signature sig, const std::string& text, const std::string& var) {
  if (sig != Signature::Presburger) throw InputError("normal-form supports --sig pr only");
  const NormalForm nf = normal_form(parse_formula(text, sig), var);
  json cells = json::array();
  auto terms = [](const std::vector<DclTerm>& ts) {
    json out = json::array();
    for (const auto& t : ts) out.push_back(t.to_string());
    return out;
  };
  for (const auto& c : nf.cells) {
    json context = json::array();
    for (const auto& l : c.context) context.push_back(l.to_string());
    cells.push_back({{"context", context},
                     {"equalities", terms(c.equalities)},
                     {"lower", terms(c.lower)},
                     {"modulus", to_string(c.modulus)},
                     {"residue", to_string(c.residue)},
                     {"upper", terms(c.upper)}});
  }
  return {{"cells", cells}, {"var", nf.var}};
}

json build_model_command(const std::string& from, const std::vector<std::string>& gens,
                         const std::vector<std::string>& profiles, const std::string& out_path) {
  ZModel model = from.empty() ? ZModel() : ZModel::from_json_text(read_file(from));
  std::map<std::string, ResidueProfile> chosen;
  for (const auto& p : profiles) {
    auto [name, descriptor] = split_binding(p);
    chosen.insert_or_assign(name, parse_profile(descriptor));
  }
  for (const auto& g : gens) {
    const auto at = g.find('@');
    if (at == std::string::npos || at == 0) throw InputError("generators look like NAME@EXPONENT, got '" + g + "'");
    const std::string name = g.substr(0, at);
    auto it = chosen.find(name);
    const ResidueProfile profile = it == chosen.end() ? ResidueProfile::standard(0) : it->second;
    if (it != chosen.end()) chosen.erase(it);
    model = model.with_generator({name, HahnVector::monomial(parse_rational(g.substr(at + 1)), Rational(1)), profile});
  }
  if (!chosen.empty()) throw InputError("profile given for unknown generator " + chosen.begin()->first);
  if (!out_path.empty()) write_file(out_path, model.to_json_text());
  json names = json::array();
  for (const auto& g : model.generators()) names.push_back(g.name);
  return {{"generators", names}, {"model", model_json(model)}};
}

// Terms in the cut refer to generator names; those become the parameters b, c, ...
CutSpec parse_cut(const ZModel& model, const json& j) {
  if (!j.is_object()) throw SchemaError("cut must be an object", "/");
  std::vector<std::pair<std::string, std::pair<LinearTerm, Integer>>> raw;
  for (const char* key : {"center", "lower", "upper"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_string()) throw SchemaError("expected a term string", std::string("/") + key);
    try {
      raw.emplace_back(key, split_quotient(j[key].get<std::string>()));
    } catch (const Error& e) {
      throw SchemaError(e.what(), std::string("/") + key);
    }
  }
  std::vector<std::size_t> used;
  for (const auto& [key, term] : raw) {
    for (const auto& [v, c] : term.first.coeffs()) {
      std::size_t idx = model.size();
      for (std::size_t i = 0; i < model.size(); ++i) {
        if (model.generators()[i].name == v) idx = i;
      }
      if (idx == model.size()) throw SchemaError("unknown generator " + v, "/" + key);
      if (std::find(used.begin(), used.end(), idx) == used.end()) used.push_back(idx);
    }
  }
  std::sort(used.begin(), used.end());
  CutSpec p;
  std::map<std::string, std::string> slot_of;
  for (std::size_t i = 0; i < used.size(); ++i) {
    p.params.push_back(model.generator(used[i]));
    slot_of[model.generators()[used[i]].name] = slot_name(i + 1);
  }
  for (const auto& [key, term] : raw) {
    LinearTerm t(term.first.constant());
    for (const auto& [v, c] : term.first.coeffs()) t = t + LinearTerm::variable(slot_of.at(v), c);
    const DclTerm d{t, term.second};
    if (key == "center") p.center = d;
    if (key == "lower") p.lower_scale = d;
    if (key == "upper") p.upper_scale = d;
  }
  if (j.contains("direction")) {
    if (!j["direction"].is_number_integer()) throw SchemaError("direction must be 1 or -1", "/direction");
    p.direction = j["direction"].get<int>();
    if (p.direction != 1 && p.direction != -1) throw SchemaError("direction must be 1 or -1", "/direction");
  }
  if (j.contains("residues")) {
    const json& r = j["residues"];
    if (r.is_array()) {
      json wrapped = {{"kind", "prefix"}, {"residues", r}};
      try {
        p.residues = detail::profile_from_json(wrapped, "");
      } catch (const SchemaError& e) {
        std::string ptr = e.pointer();
        throw SchemaError(e.what(), ptr.rfind("/residues", 0) == 0 ? ptr : "/residues");
      }
    } else {
      p.residues = detail::profile_from_json(r, "/residues");
    }
  }
  return p;
}

json extend_command(const std::string& model_path, int which, const std::string& cut_text, const std::string& b_text,
                    const std::string& name, const std::string& out_path) {
  const ZModel model = ZModel::from_json_text(read_file(model_path));
  json cut_json;
  try {
    cut_json = json::parse(!cut_text.empty() && cut_text.front() == '@' ? read_file(cut_text.substr(1)) : cut_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed cut JSON: ") + e.what(), "/");
  }
  const CutSpec p = parse_cut(model, cut_json);
  json out;
  ZModel extended;
  if (which == 1) {
    const CaseOneExtension e = extend_case1(model, p, name);
    extended = e.model;
    out["b"] = to_string(e.b, e.model.generators());
    out["generator"] = e.model.generators()[e.generator].name;
  } else {
    ModelElement b;
    if (!b_text.empty()) {
      b = parse_element(model, b_text);
    } else {
      auto found = cut_realization(model, p);
      if (!found) throw PreconditionViolation("the cut is omitted in the model; use --case 1");
      b = *found;
    }
    const CaseTwoExtension e = extend_case2(model, p, b, 12, name);
    extended = e.model;
    out["b"] = to_string(b, model.generators());
    out["generator"] = e.model.generators()[e.epsilon].name;
    out["realization"] = to_string(e.realization, e.model.generators());
  }
  out["case"] = which;
  out["model"] = model_json(extended);
  if (!out_path.empty()) write_file(out_path, extended.to_json_text());
  return out;
}

json type_of_command(const std::string& model_path, const std::vector<std::string>& elements,
                     const std::vector<std::string>& context, std::size_t depth, const std::string& mode,
                     const Budget& budget) {
  const ZModel model = ZModel::from_json_text(read_file(model_path));
  std::vector<ModelElement> tuple, ctx;
  for (const auto& e : elements) tuple.push_back(parse_element(model, e));
  for (const auto& e : context) ctx.push_back(parse_element(model, e));
  TypeOracle oracle = type_of(model, tuple);
  if (mode == "reduction") {
    if (tuple.empty()) throw InputError("reduction mode needs at least one element");
    std::vector<ModelElement> ba{tuple[0]};
    ba.insert(ba.end(), ctx.begin(), ctx.end());
    std::vector<ModelElement> ac = ctx;
    ac.insert(ac.end(), tuple.begin() + 1, tuple.end());
    oracle = type_of_reduction(TypeReduction{type_of(model, ba, "tp(b,a)"), type_of(model, ac, "tp(a,c)"), ctx.size()},
                               tuple.size(), budget);
  } else if (mode != "direct") {
    throw InputError("mode must be direct or reduction");
  } else if (!context.empty()) {
    throw InputError("--context applies to reduction mode");
  }
  json members = json::array();
  for (std::size_t c = 0; c <= depth; ++c) {
    if (oracle.contains_code(Integer(static_cast<unsigned long>(c)))) members.push_back(c);
  }
  return {{"arity", tuple.size()}, {"depth", depth}, {"members", members}, {"mode", mode}};
}

json tree_check_command(Signature sig, std::size_t depth) {
  const TreeReport r = perfect_tree_check(sig, depth);
  json out = {{"checks", r.checks},
              {"depth", r.depth},
              {"nodes", r.nodes},
              {"sig", std::string(signature_name(sig))},
              {"status", r.passed ? "pass" : "fail"}};
  if (r.failure) {
    json f = {{"condition", r.failure->condition}, {"formula", r.failure->formula}, {"sigma", r.failure->sigma}};
    if (r.failure->tau) f["tau"] = *r.failure->tau;
    out["failure"] = f;
  }
  return out;
}

json hr_check_command(const std::string& exponents, const HrOptions& opts) {
  const auto set = ExponentSet::parse(exponents);
  if (!set) throw InputError("exponents must be rationals or integers");
  const HrReport r = harnik_ressayre_check(*set, opts);
  json out = {{"density_witnesses", r.density.size()},
              {"exponents", set->name()},
              {"pairs", r.pairs_checked},
              {"status", r.passed ? "pass" : "fail"},
              {"triples", r.triples_checked}};
  if (r.density_failure) {
    out["density_failure"] = {to_string(r.density_failure->first), to_string(r.density_failure->second)};
  }
  if (r.failure) out["failure"] = *r.failure;
  return out;
}

CutElement parse_real(const std::string& descriptor) {
  std::vector<std::string> parts;
  std::stringstream ss(descriptor);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw InputError("empty --real");
  if (parts[0] == "rational" && parts.size() == 2) return CutElement(ComputableReal::rational(parse_rational(parts[1])));
  if (parts[0] == "series" && (parts.size() == 3 || parts.size() == 4)) {
    const unsigned base = static_cast<unsigned>(std::stoul(parts[1]));
    const unsigned digit = parts.size() == 4 ? static_cast<unsigned>(std::stoul(parts[3])) : 1;
    return CutElement(ComputableReal::series(base, parts[2], digit));
  }
  if (parts[0] == "cut" && parts.size() == 3) {
    std::vector<RealAlgebraic> lo, hi;
    if (!parts[1].empty()) lo.push_back(RealAlgebraic::parse(parts[1]));
    if (!parts[2].empty()) hi.push_back(RealAlgebraic::parse(parts[2]));
    return realize_cut(lo, hi);
  }
  throw InputError("--real must be rational:Q, series:BASE:EXPONENT[:DIGIT] or cut:LOWER:UPPER");
}

json rcf_decide_command(const std::string& text, const std::string& var, const std::string& real,
                        const std::vector<std::string>& params, const std::string& mode, const Budget& budget) {
  const Formula f = parse_formula(text, Signature::OrderedRing);
  const CutElement b = parse_real(real);
  RealAssignment values;
  for (const auto& p : params) {
    auto [name, value] = split_binding(p);
    values.insert_or_assign(name, RealAlgebraic::parse(value));
  }
  bool value = false;
  if (mode == "direct") {
    value = decide_cut(f, var, b, values, budget);
  } else if (mode == "reduction") {
    std::vector<std::string> names;
    std::vector<RealAlgebraic> ctx;
    for (const auto& [n, x] : values) {
      names.push_back(n);
      ctx.push_back(x);
    }
    std::vector<RealAlgebraic> ac = ctx;
    ac.insert(ac.end(), ctx.begin(), ctx.end());
    value = decide_cut_reduction(f, var, names, CutReduction{cut_type(b, ctx, budget), algebraic_type(ac), ctx.size()},
                                 budget);
  } else {
    throw InputError("mode must be direct or reduction");
  }
  json out = {{"mode", mode}, {"queries", b.real().query_log().size()}, {"value", value}};
  if (b.requires_nonstandard()) out["nonstandard"] = true;
  return out;
}

json error_json(const std::string& kind, const std::string& message, const std::string* pointer = nullptr) {
  json e = {{"kind", kind}, {"message", message}};
  if (pointer) e["pointer"] = *pointer;
  return {{"error", e}, {"v", 1}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures and model builders for Presburger arithmetic, ordered groups and real closed "
               "fields.",
               "saturator"};
  app.require_subcommand(1, 1);
  Budget budget = Budget::from_environment();
  app.add_option("--budget-refine", budget.refine_steps, "Refinement steps per real comparison")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-search", budget.search_terms, "Oracle queries per reduction search")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-bisections", budget.bisections, "Bisections per cut query")->check(CLI::PositiveNumber);
  app.add_option("--budget-tree", budget.tree_visits, "Tree nodes visited per path search")
      ->check(CLI::PositiveNumber);

  std::string sig = "pr", formula, var = "v", model, out_path, from, cut, b_text, name, mode = "direct",
              real, exponents = "rationals";
  std::vector<std::string> elements, context, gens, profiles, params;
  std::size_t depth = 6;
  int which = 1;
  HrOptions hr;

  auto* qe = app.add_subcommand("qe", "Cooper quantifier elimination");
  qe->add_option("--sig", sig, "Signature (pr)");
  qe->add_option("formula", formula, "Formula")->required();

  auto* decide = app.add_subcommand("decide", "Decide a sentence, or a formula in a model");
  decide->add_option("--sig", sig, "Signature: pr, og or ring");
  decide->add_option("--model", model, "Model file (pr)");
  decide->add_option("--element", elements, "NAME=TERM[/m] over generator names");
  decide->add_option("formula", formula, "Formula")->required();

  auto* nf = app.add_subcommand("normal-form", "Cell normal form in one variable");
  nf->add_option("--sig", sig, "Signature (pr)");
  nf->add_option("--var", var, "Distinguished variable");
  nf->add_option("formula", formula, "Formula")->required();

  auto* build = app.add_subcommand("build-model", "Build or list a finitely generated Z-group model");
  build->add_option("--from", from, "Start from a model file");
  build->add_option("--generator", gens, "NAME@EXPONENT");
  build->add_option("--profile", profiles, "NAME=zero|standard:K|factorial[:OFFSET[:SCALE]]|prefix:1mod2,...|JSON");
  build->add_option("--out", out_path, "Write the model file");

  auto* extend = app.add_subcommand("extend", "Realize a cut type by a new generator");
  extend->add_option("--model", model, "Model file")->required();
  extend->add_option("--case", which, "1 (omitted cut) or 2 (realized cut)")->check(CLI::IsMember({1, 2}));
  extend->add_option("--cut", cut, "Cut JSON, or @FILE")->required();
  extend->add_option("--b", b_text, "Realization of the cut in the model (case 2)");
  extend->add_option("--name", name, "Name of the new generator");
  extend->add_option("--out", out_path, "Write the extended model file");

  auto* type = app.add_subcommand("type-of", "Formula codes in the type of a tuple");
  type->add_option("--model", model, "Model file")->required();
  type->add_option("--element", elements, "Tuple element TERM[/m]");
  type->add_option("--context", context, "Reduction context element TERM[/m]");
  type->add_option("--depth", depth, "Largest formula code");
  type->add_option("--mode", mode, "direct or reduction");

  auto* tree = app.add_subcommand("tree-check", "Effectively perfect tree check");
  tree->add_option("--sig", sig, "Signature: pr, og or ring");
  tree->add_option("--depth", depth, "Tree depth");

  auto* hrc = app.add_subcommand("hr-check", "Harnik-Ressayre desk checks on a Hahn group");
  hrc->add_option("--exponents", exponents, "rationals or integers");
  hrc->add_option("--pairs", hr.pairs, "Sampled class pairs");
  hrc->add_option("--triples", hr.triples, "Sampled embedding triples");
  hrc->add_option("--seed", hr.seed, "Sampling seed");

  auto* rcf = app.add_subcommand("rcf-decide", "Decide a formula at a real given by its cut");
  rcf->add_option("--var", var, "Cut variable");
  rcf->add_option("--real", real, "rational:Q | series:BASE:EXPONENT[:DIGIT] | cut:LOWER:UPPER")->required();
  rcf->add_option("--param", params, "NAME=ALGEBRAIC (sqrt(q), root([..], lo, hi) or a rational)");
  rcf->add_option("--mode", mode, "direct or reduction");
  rcf->add_option("formula", formula, "Formula")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  json result;
  try {
    if (app.got_subcommand(qe)) {
      result = qe_command(signature_arg(sig), formula);
    } else if (app.got_subcommand(decide)) {
      result = decide_command(signature_arg(sig), formula, model, elements);
    } else if (app.got_subcommand(nf)) {
      result = normal_form_command(signature_arg(sig), formula, var);
    } else if (app.got_subcommand(build)) {
      result = build_model_command(from, gens, profiles, out_path);
    } else if (app.got_subcommand(extend)) {
      result = extend_command(model, which, cut, b_text, name, out_path);
    } else if (app.got_subcommand(type)) {
      result = type_of_command(model, elements, context, depth, mode, budget);
    } else if (app.got_subcommand(tree)) {
      result = tree_check_command(signature_arg(sig), depth);
    } else if (app.got_subcommand(hrc)) {
      result = hr_check_command(exponents, hr);
    } else if (app.got_subcommand(rcf)) {
      result = rcf_decide_command(formula, var, real, params, mode, budget);
    }
  } catch (const BudgetExhausted& e) {
    out << error_json("budget", e.what()).dump() << "\n";
    return kExitBudget;
  } catch (const QeBlowup& e) {
    out << error_json("budget", e.what()).dump() << "\n";
    return kExitBudget;
  } catch (const SchemaError& e) {
    out << error_json("schema", e.what(), &e.pointer()).dump() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    out << error_json("parse", e.what()).dump() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    out << error_json("input", e.what()).dump() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    out << error_json("input", e.what()).dump() << "\n";
    return kExitInput;
  }
  result["v"] = 1;
  out << result.dump() << "\n";
  return kExitOk;
}

}  // namespace saturator

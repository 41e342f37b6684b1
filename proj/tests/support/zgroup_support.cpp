// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include "zgroup_support.hpp"

namespace saturator::testing {

ZModel two_generator_model() {
  return ZModel()
      .with_generator({"c1", HahnVector::monomial(2, 1), ResidueProfile::standard(0)})
      .with_generator({"c2", HahnVector::monomial(4, 1), ResidueProfile::factorial()});
}

CutSpec omitted_cut(const ZModel& model) {
  CutSpec p;
  p.params = {model.generator(0)};
  p.upper_scale = DclTerm{LinearTerm::variable("b"), 1};
  p.residues = ResidueProfile::prefix({{1, 2}, {2, 3}, {3, 5}});
  return p;
}

CutSpec realized_cut(const ZModel& model) {
  CutSpec p;
  p.params = {model.generator(0)};
  p.lower_scale = DclTerm{LinearTerm::variable("b"), 1};
  p.residues = ResidueProfile::standard(1);
  return p;
}

std::vector<std::uint64_t> disagreements(const TypeOracle& x, const TypeOracle& y, std::uint64_t max_code) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 0; c <= max_code; ++c) {
    const Integer code = static_cast<unsigned long>(c);
    if (x.contains_code(code) != y.contains_code(code)) out.push_back(c);
  }
  return out;
}

int sign_rule(const ZModel& old, const Integer& r, const Integer& s, const std::vector<Integer>& t) {
  const int lead = old.sign(old.element(0, t));
  if (lead != 0) return lead;
  if (s != 0) return sgn(s);
  return sgn(r);
}

}  // namespace saturator::testing

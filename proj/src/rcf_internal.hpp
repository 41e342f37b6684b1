// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "saturator/rcf.hpp"

namespace saturator::detail {

// Sparse polynomial over a fixed variable list; exponent vectors index the list.
struct MPoly {
  std::map<std::vector<int>, Rational> terms;
  std::size_t nvars = 0;

  static MPoly constant(std::size_t n, const Rational& c);
  static MPoly variable(std::size_t n, std::size_t i);
  void add(const MPoly& o, const Rational& k);
  MPoly operator*(const MPoly& o) const;
  int degree_in(std::size_t i) const;
};

// Variables resolve through `index`; throws DomainError on anything else.
MPoly to_mpoly(const Term& t, const std::map<std::string, std::size_t>& index, std::size_t nvars);

// Exact sign of p at a point with real algebraic coordinates.
int sign_at(const MPoly& p, const std::vector<RealAlgebraic>& point);

}  // namespace saturator::detail

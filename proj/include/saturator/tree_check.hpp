// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "saturator/formula.hpp"

namespace saturator {

// The splitting family phi_sigma(v) for a node sigma ("0"/"1" string):
//   pr:   conjunction of P_p(v) or its negation over the first |sigma| primes;
//   og:   0 < w plus, per level, q*w < v or its negation, q the simplest rational
//         inside the current interval for v / w (w is a second free variable);
//   ring: q < v or its negation, q chosen the same way.
// The empty node is the formula 0 = 0.
Formula tree_formula(Signature sig, const std::string& sigma);

struct TreeFailure {
  std::string sigma;
  // 1: phi_sigma unsatisfiable, 2: phi_sigma does not imply phi_tau, 3: children overlap.
  int condition = 0;
  std::optional<std::string> tau;
  std::string formula;
};

struct TreeReport {
  Signature sig = Signature::Presburger;
  std::size_t depth = 0;
  // Non-empty nodes of length <= depth: 2^(depth+1) - 2.
  std::size_t nodes = 0;
  std::size_t checks = 0;
  bool passed = true;
  std::optional<TreeFailure> failure;

};

// Checks Definition 1.4 (i)-(iii) for every node up to `depth`, stopping at the first
// failure.  DomainError when depth exceeds the cap.
TreeReport perfect_tree_check(Signature sig, std::size_t depth, std::size_t cap = 12);

}  // namespace saturator

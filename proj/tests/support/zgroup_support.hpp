// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "saturator/zgroup.hpp"

namespace saturator::testing {

// c1 at exponent 2 with the zero profile, c2 at exponent 4 with the factorial profile.
ZModel two_generator_model();

// The cut 1 << v << c1 over (c1); omitted in the two-generator model.
CutSpec omitted_cut(const ZModel& model);
// The cut v >> c1 over (c1) with v = 1 mod every n; realized by c2.
CutSpec realized_cut(const ZModel& model);

// Codes <= max_code whose membership differs between the two oracles.
std::vector<std::uint64_t> disagreements(const TypeOracle& x, const TypeOracle& y, std::uint64_t max_code);

// The sign of r + s*eps + sum t_i c_i by the leading-term rule, reading sum t_i c_i in `old`.
int sign_rule(const ZModel& old, const Integer& r, const Integer& s, const std::vector<Integer>& t);

}  // namespace saturator::testing

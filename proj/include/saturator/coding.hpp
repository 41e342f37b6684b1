// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "saturator/formula.hpp"
#include "saturator/numeric.hpp"

namespace saturator {

// Bijective integer coding of terms and formulas, one code space per signature.
//
// A code c is split as follows: the first F codes are the nullary constructors; otherwise
// tag = (c - F) mod K and payload = (c - F) div K.  Payloads of binary constructors are
// Cantor pairs, integers are zig-zag encoded, variables use variable_index().
//
//   terms     pr:   F=0 K=6  Var(i) Const(z) Add(l,r) Sub(l,r) Neg(t) Scale(z,t)
//             og:   F=1 (0 is the constant 0), K=5  Var Add Sub Neg Scale
//             ring: F=0 K=6  Var Const Add Sub Neg Mul(l,r)
//   formulas  pr:   K=9  Lt(l,r) Eq(l,r) Div(n-2,t) Not And Or Implies Exists(i,f) Forall(i,f)
//             og, ring: K=8, the same without Div
//
// Every payload is strictly smaller than its code, so decoding terminates, and every
// non-negative integer decodes to exactly one syntax tree.
Integer encode(const Term& term, Signature sig);
Integer encode(const Formula& formula, Signature sig);

Term decode_term(const Integer& code, Signature sig);
// Throws DecodeError for negative codes.
Formula decode(const Integer& code, Signature sig);

}  // namespace saturator

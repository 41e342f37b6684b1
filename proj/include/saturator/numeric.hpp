// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace saturator {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p" or "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

// Euclidean remainder in [0, |n|).
Integer mod(const Integer& a, const Integer& n);
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

inline int sign(const Integer& a) { return sgn(a); }
inline int sign(const Rational& a) { return sgn(a); }

// Integer zig-zag bijection Z -> N: 0,-1,1,-2,2,... -> 0,1,2,3,4,...
Integer zigzag(const Integer& z);
Integer unzigzag(const Integer& n);

// Cantor pairing N x N -> N and its inverse.
Integer pair(const Integer& x, const Integer& y);
std::pair<Integer, Integer> unpair(const Integer& z);

// The rational with the smallest denominator (then smallest absolute numerator)
// strictly between lo and hi; an absent bound is infinite.
Rational simplest_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi);

// Modular inverse of a modulo n (gcd(a, n) must be 1).
Integer mod_inverse(const Integer& a, const Integer& n);

}  // namespace saturator

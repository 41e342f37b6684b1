// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace saturator {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A symbol was used outside the signature that owns it (e.g. P_n outside Presburger).
class SignatureError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

// An oracle, refinement or search ran out of its configured budget.  Never a wrong answer.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// Quantifier elimination exceeded the configured term-count cap.
class QeBlowup : public Error {
 public:
  QeBlowup(const std::string& message, std::size_t literals, std::size_t cap)
      : Error(message), literals_(literals), cap_(cap) {}
  std::size_t literals() const { return literals_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t literals_;
  std::size_t cap_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ExactnessError : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class ConsistencyViolation : public Error {
 public:
  using Error::Error;
};

// A cut element could not be separated from a decomposition endpoint.
class PromiseViolation : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  SchemaError(const std::string& message, std::string pointer)
      : Error(message + " (at " + pointer + ")"), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace saturator

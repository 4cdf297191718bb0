#pragma once

#include <stdexcept>
#include <string>

namespace rankcrypt {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  using Error::Error;
};

/// A family of vectors that was required to be a basis is dependent.
class NotABasis : public Error {
 public:
  using Error::Error;
};

class BadParameters : public Error {
 public:
  using Error::Error;
};

class DecodingFailure : public Error {
 public:
  using Error::Error;
};

class NotACodeword : public Error {
 public:
  using Error::Error;
};

/// RAMESSES decryption: the decoded error V o E has rank below t.
class RankDrop : public Error {
 public:
  using Error::Error;
};

class AttackFailure : public Error {
 public:
  AttackFailure(std::string step, const std::string& what)
      : Error(step + ": " + what), step_(std::move(step)) {}

  const std::string& step() const noexcept { return step_; }

 private:
  std::string step_;
};

/// Malformed artifact file or CSV record.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace rankcrypt

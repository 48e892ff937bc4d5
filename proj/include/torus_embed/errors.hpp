#pragma once

#include <stdexcept>
#include <string>

namespace torus_embed {

// Base of every error raised by the library. Callers that only care about
// "something went wrong" can catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (dimension mismatch, asymmetric matrix, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A Gram matrix with a significantly negative eigenvalue.
class NotEuclidean : public Error {
 public:
  using Error::Error;
};

// Point set is affinely dependent at the requested tolerance.
class NotSimplex : public Error {
 public:
  using Error::Error;
};

// Input too small for the requested construction (e.g. a single point).
class TrivialInput : public Error {
 public:
  using Error::Error;
};

// Matrix violates sum_{i<j} (amax^2 - a_ij^2) < amax^2.
class NotAlmostRegular : public Error {
 public:
  using Error::Error;
};

// A freshly built certificate did not pass its own verification.
class VerificationFailed : public Error {
 public:
  using Error::Error;
};

// Structurally broken certificate; the message names the first bad field.
class InvalidCertificate : public Error {
 public:
  explicit InvalidCertificate(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace torus_embed

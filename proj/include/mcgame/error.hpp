#pragma once

#include <stdexcept>
#include <string>

namespace mcgame {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed document text (syntax, wrong JSON type, bad rational literal).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Instance too large for the requested exhaustive or exponential routine.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Cost function evaluated outside its declared domain.
class CostDomainError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace mcgame

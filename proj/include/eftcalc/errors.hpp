#pragma once

#include <stdexcept>
#include <string>

namespace eftcalc {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression: wrong index arity, index used more than twice, ...
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A gamma5 trace requested outside of the four-dimensional trace mode.
class SchemeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedReduction : public Error {
 public:
  using Error::Error;
};

/// Loop integral shape not covered by the evaluation tables.
class NotInTable : public Error {
 public:
  using Error::Error;
};

class RenormalizationIncomplete : public Error {
 public:
  using Error::Error;
};

class NotReducible : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Model-level inconsistency (unknown slot, undeclared symbol).
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace eftcalc

#pragma once

#include <stdexcept>
#include <string>

namespace surround {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector shapes do not conform.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A kernel computation found a kernel of the wrong dimension or sign.
class DegeneracyError : public Error {
public:
  using Error::Error;
};

/// Invalid construction input (bodies, graphs, schedules, scenarios).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A weak cycle does not chain or references missing arcs.
class MalformedCycle : public Error {
public:
  using Error::Error;
};

/// The configuration graph has an inconsistent cycle where consistency is required.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

/// The underlying graph is not connected where connectivity is required.
class ConnectivityError : public Error {
public:
  using Error::Error;
};

/// Enumeration or matrix work refused because the instance exceeds desk scale.
class ScaleError : public Error {
public:
  using Error::Error;
};

/// A theorem or lemma was invoked outside its hypotheses.
class HypothesisError : public Error {
public:
  using Error::Error;
};

/// Integration produced a non-finite state.
class DivergenceError : public Error {
public:
  DivergenceError(const std::string& what, double time)
      : Error(what), time_(time) {}

  double time() const noexcept { return time_; }

private:
  double time_;
};

/// Scenario file could not be read or parsed. `field` is a JSON pointer-like path.
class ScenarioError : public Error {
public:
  ScenarioError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

} // namespace surround

#pragma once

#include <stdexcept>
#include <string>

namespace guiact {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data (files, records, prediction streams).
class InputError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters or flag combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A raw coordinate lies outside the screen it is normalized against.
class CoordinateRangeError : public InputError {
 public:
  CoordinateRangeError(std::string field, double value, double limit)
      : InputError("coordinate " + field + "=" + std::to_string(value) +
                   " outside [0, " + std::to_string(limit) + "]"),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Group-relative advantages are undefined when every reward is equal.
class DegenerateGroupError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public InputError {
 public:
  using InputError::InputError;
};

// Training produced non-finite parameters.
class DivergenceError : public Error {
 public:
  DivergenceError(int step, const std::string& what)
      : Error("divergence at step " + std::to_string(step) + ": " + what),
        step_(step) {}

  int step() const { return step_; }

 private:
  int step_;
};

}  // namespace guiact

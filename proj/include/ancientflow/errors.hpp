#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ancientflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad grid size, t >= 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// min(v) <= 0 after a time step.
class PositivityLost : public Error {
public:
  PositivityLost(double t, double min_value);
  double time() const noexcept { return t_; }
  double min_value() const noexcept { return min_value_; }

private:
  double t_;
  double min_value_;
};

/// The requested step would reach or cross the extinction time t = 0.
class TimeCrossedZero : public Error {
public:
  TimeCrossedZero(double t, double dt);
};

class MalformedConfig : public Error {
public:
  MalformedConfig(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class InvalidValue : public Error {
public:
  InvalidValue(std::string field, const std::string& what);
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

class IoError : public Error {
public:
  IoError(std::string path, const std::string& what);
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

}  // namespace ancientflow

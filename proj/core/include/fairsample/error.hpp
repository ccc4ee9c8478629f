#pragma once

#include <stdexcept>
#include <string>

namespace fairsample {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: wrong lengths, unknown names, bad indices.
class InputError : public Error {
 public:
  using Error::Error;
};

// Request exceeds a hard size bound (wire count, enumeration limit).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

class CompilationError : public Error {
 public:
  using Error::Error;
};

// Missing or invalid calibration or backend data.
class DataError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// A statistic that has no value for the given input (e.g. fewer than two cells).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace fairsample

#pragma once

#include <stdexcept>
#include <string>

namespace crisismon {

// Base of all library errors. exit_code() is what the CLI returns:
// 1 for validation/contract failures, 2 for I/O and parse failures.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

class ParseError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

} // namespace crisismon

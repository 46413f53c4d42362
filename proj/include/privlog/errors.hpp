#pragma once

#include <stdexcept>
#include <string>

namespace privlog {

// Error taxonomy mirrors the CLI exit codes: configuration problems,
// unparseable input, inputs that violate invariants, logs that cannot be
// released at the requested guarantee, and plain I/O failures.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnreleasableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace privlog

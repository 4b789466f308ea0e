#pragma once

#include <stdexcept>
#include <string>

namespace strel {

// Base for every error raised by the library. Subclasses name the failure
// family so callers (and tests) can tell a malformed file from a bad config.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input file does not follow its declared format (missing column, bad row).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Value out of its permitted range (scores outside [0,1], non-finite numbers).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration or hyperparameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Duplicate keys or identifiers that must be unique.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Parallel vectors disagree in length.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// An embedding set is missing a sentence the caller needs.
class CoverageError : public Error {
 public:
  using Error::Error;
};

}  // namespace strel

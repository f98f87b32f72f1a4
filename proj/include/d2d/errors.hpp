#pragma once

#include <stdexcept>
#include <string>

namespace d2d {

/// Rejected configuration value (zero-area rectangle, unknown algorithm, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. The message carries line or field context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed document whose contents break a domain invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance exceeds the exact solver's node limit.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace d2d

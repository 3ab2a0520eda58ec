#pragma once

#include <stdexcept>
#include <string>

namespace imd {

// Bad argument shape or value (empty input, degenerate parameter).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input whose length does not match the required size.
class LengthError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// Public key material that fails validation (off-curve, infinity, out of range).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wire bytes that cannot be parsed as a protocol message.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Message arrived in the wrong state or with the wrong type.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation invoked in a state that does not allow it.
class StateError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

// Token opened but its content did not verify.
class AuthenticationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Preset/config file problem: missing key, bad unit, unparsable value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace imd

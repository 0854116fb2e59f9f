#pragma once

#include <stdexcept>
#include <string>

namespace sipmac {

/// Raised while reading or validating a configuration. Always names the key
/// that caused the failure.
class ConfigError : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation };

  ConfigError(Kind kind, std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), kind_(kind), key_(std::move(key)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& key() const noexcept { return key_; }

 private:
  Kind kind_;
  std::string key_;
};

/// The requested bit resolution cannot be reached anywhere in the search
/// bracket (the RIN term caps the achievable SNR).
class UnreachableTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model evaluation has no physical operating point, e.g. the required laser
/// power overflows or no network size meets the target.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sipmac

#pragma once

#include <stdexcept>
#include <string>

namespace uavmm {

// Bad configuration or impossible parameter combination (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// A numerical safety check fired, e.g. a non-finite sample (CLI exit code 3).
class NumericalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uavmm

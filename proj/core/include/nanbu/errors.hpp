#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nanbu {

/// Invalid configuration or violated model hypothesis. Carries every violated
/// constraint, each phrased as the inequality that failed.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
  explicit ConfigError(const std::string& violation)
      : ConfigError(std::vector<std::string>{violation}) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "configuration error";
    for (const auto& item : items) {
      out += "\n  " + item;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

/// A numerical procedure failed its own convergence check.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File I/O failure; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nanbu

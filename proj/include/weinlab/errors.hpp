#pragma once

#include <stdexcept>
#include <string>

namespace weinlab {

/// Argument outside the mathematical domain of an operation (x <= 0 for
/// log-Gamma, alpha <= -1/2, p < 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operands live on different grids, or a set was built for the wrong domain.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation undefined for the zero function (normalised ratios).
class ZeroFunction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid experiment configuration. `where` names the offending key path
/// (e.g. "sweep.s[1]") so the CLI can point at it.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, std::string message)
      : std::runtime_error(where.empty() ? message : where + ": " + message),
        where_(std::move(where)),
        message_(std::move(message)) {}

  const std::string& where() const noexcept { return where_; }
  /// The diagnostic without the key-path prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string where_;
  std::string message_;
};

}  // namespace weinlab

#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter or argument outside its mathematical domain.
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Unresolvable or malformed configuration input.
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace casimir

#pragma once

#include <stdexcept>
#include <string>

namespace cyq {

// Numeric values match the CLI exit-code contract.
enum class ErrorCode {
  check_failed = 1,
  invalid_quiver = 2,
  parse = 3,
  inadmissible_potential = 4,
  inadmissible_transform = 5,
  invalid_argument = 6,
  internal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cyq

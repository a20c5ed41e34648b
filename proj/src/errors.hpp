#pragma once

#include <stdexcept>
#include <string>

namespace sgl {

// Exit-code contract shared with the CLI: 2 argument, 3 truncation/resource,
// 4 mathematical inconsistency.
struct ArgumentError : std::runtime_error {
  explicit ArgumentError(const std::string& msg) : std::runtime_error(msg) {}
  static constexpr int exit_code = 2;
};

struct TruncationError : std::runtime_error {
  explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
  static constexpr int exit_code = 3;
};

struct InconsistencyError : std::runtime_error {
  explicit InconsistencyError(const std::string& msg)
      : std::runtime_error(msg) {}
  static constexpr int exit_code = 4;
};

}  // namespace sgl

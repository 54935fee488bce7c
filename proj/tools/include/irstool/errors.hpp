#pragma once

#include <stdexcept>
#include <string>

namespace irstool {

// Malformed or semantically invalid experiment spec (exit code 2).
struct SpecError : std::runtime_error {
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure reading specs or writing artifacts (exit code 3).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace irstool

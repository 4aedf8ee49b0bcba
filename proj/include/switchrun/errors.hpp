#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace switchrun {

// Error taxonomy shared by all modules. Everything derives from
// std::runtime_error so callers can catch broadly at the CLI boundary.

struct EmptyInput : std::runtime_error {
  EmptyInput() : std::runtime_error("empty effective input") {}
};

struct ParseError : std::runtime_error {
  std::size_t offset;  // byte offset of the offending character
  ParseError(std::size_t off, const std::string& what)
      : std::runtime_error(what + " at byte offset " + std::to_string(off)),
        offset(off) {}
};

struct RangeError : std::runtime_error {
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ScheduleError : std::runtime_error {
  explicit ScheduleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace switchrun

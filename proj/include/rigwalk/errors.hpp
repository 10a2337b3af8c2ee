#pragma once

#include <stdexcept>
#include <string>

namespace rigwalk {

// Bad user-supplied parameters or violated operation preconditions. CLI exit 2.
struct validation_error : std::invalid_argument {
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// Input is valid but exceeds a documented size/iteration limit. CLI exit 3.
struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rigwalk

// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace ymx {

// Invalid input: malformed words, inadmissible weights, shape mismatches.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// An engine declined the problem because a size guard was exceeded.
class EngineRefusal : public std::runtime_error {
 public:
  explicit EngineRefusal(const std::string& what) : std::runtime_error(what) {}
};

// Two independent constructions disagreed; indicates a bug.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ymx

#pragma once

#include <stdexcept>
#include <string>

namespace mutualspace {

// Input could not be parsed (JSON syntax, schema shape, unknown keys).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input parsed but violates a documented invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// No context-appropriate interaction object exists in a floorplan.
class TargetNotFoundError : public std::runtime_error {
 public:
  explicit TargetNotFoundError(const std::string& msg) : std::runtime_error(msg) {}
};

// The pose search found no pose with overlapping footprints.
class MatchFailedError : public std::runtime_error {
 public:
  explicit MatchFailedError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mutualspace

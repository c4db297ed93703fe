#pragma once

#include <stdexcept>
#include <string>

namespace vforge {

/// Malformed input document (VCD, dataset line, provider response, ...).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// An external executable (simulator, compiler) could not be found.
class ToolMissingError : public std::runtime_error {
 public:
  explicit ToolMissingError(const std::string& what) : std::runtime_error(what) {}
};

/// Sampling gave up after its retry bound.
class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration rejected (unknown key, bad value).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vforge

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vforge/verilog/artifact.hpp"

namespace vforge::verilog {

/// Two-state-plus-unknown evaluator for the Verilog subset this library emits:
/// port lists, parameter/reg/wire declarations, continuous assigns (whole
/// signal or single bit), always_comb case blocks with ternary right-hand
/// sides, and clocked if/else register updates. Anything else is a ParseError.
class Interpreter {
 public:
  /// Throws ParseError on text outside the subset.
  static Interpreter parse(std::string_view text);

  Interpreter(Interpreter&&) noexcept;
  Interpreter& operator=(Interpreter&&) noexcept;
  ~Interpreter();

  const std::string& module_name() const;
  const std::vector<Port>& ports() const;

  /// Drives a port or internal register. Throws std::out_of_range for
  /// undeclared names.
  void set(const std::string& name, std::uint64_t value);
  std::uint64_t get(const std::string& name) const;
  bool unknown(const std::string& name) const;
  std::uint64_t parameter(const std::string& name) const;

  /// Re-evaluates combinational logic to a fixed point.
  void settle();
  /// One rising edge of every clocked block (non-blocking semantics), then
  /// settle().
  void clock();

 private:
  struct Impl;
  explicit Interpreter(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

}  // namespace vforge::verilog

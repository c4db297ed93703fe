#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace vforge::wave {

struct VcdVar {
  std::string id;
  /// Dotted hierarchical name, e.g. "tb.dut.a".
  std::string name;
  std::string type;  // wire / reg / ...
  unsigned width = 1;
};

struct VcdChange {
  std::uint64_t time = 0;  // in timescale units
  std::string id;
  /// MSB-first characters from {0,1,x,z}; one character for scalars.
  std::string value;
};

struct VcdDocument {
  /// Timescale in nanoseconds per unit (e.g. 0.001 for "1ps").
  double unit_ns = 1.0;
  std::string timescale;
  std::vector<VcdVar> vars;
  std::vector<VcdChange> changes;

  /// Exact hierarchical name, or nullptr.
  const VcdVar* find(std::string_view name) const;
  /// First variable whose name is `suffix` or ends with "." + suffix.
  const VcdVar* find_suffix(std::string_view suffix) const;
};

/// Accepts $timescale, $scope/$upscope, $var, $enddefinitions, $dumpvars /
/// $dumpall / $dumpon / $dumpoff blocks, scalar and vector (b...) changes and
/// #time marks; $date/$version/$comment are skipped. Real values, undeclared
/// ids, time regressions and malformed headers raise ParseError.
VcdDocument parse_vcd(std::string_view text);

/// Minimal writer producing documents parse_vcd accepts.
class VcdWriter {
 public:
  /// `timescale` such as "1ns" or "1ps".
  explicit VcdWriter(std::string scope = "tb", std::string timescale = "1ns");

  /// Declares a variable in the writer's scope; returns its id code.
  std::string declare(const std::string& name, unsigned width = 1, const std::string& type = "wire");

  /// Records a change; times must be non-decreasing.
  void change(std::uint64_t time, const std::string& id, std::string value);

  std::string str() const;

 private:
  std::string scope_;
  std::string timescale_;
  std::vector<VcdVar> vars_;
  std::vector<VcdChange> changes_;
};

}  // namespace vforge::wave

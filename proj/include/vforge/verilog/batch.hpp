#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vforge/verilog/artifact.hpp"
#include "vforge/verilog/simulator.hpp"
#include "vforge/verilog/testbench.hpp"

namespace vforge::verilog {

/// Verdict of one testbench run, parsed from its SUMMARY/MISMATCH lines.
struct TestVerdict {
  bool summary_seen = false;
  std::size_t pass_count = 0;
  std::size_t fail_count = 0;
  std::size_t expected_checks = 0;
  std::vector<std::string> mismatches;

  /// Summary present, no failures, and every planned check executed.
  bool passed() const {
    return summary_seen && fail_count == 0 && pass_count == expected_checks;
  }
};

/// Scans simulator output for "SUMMARY <tag>: PASS=<n> FAIL=<m>" and
/// "MISMATCH <tag>: ..." lines.
TestVerdict parse_verdict(const std::string& log, const std::string& tag,
                          std::size_t expected_checks);

struct BatchItem {
  VerilogArtifact artifact;
  std::uint64_t seed = 0;
  std::optional<std::size_t> random_tail;
};

struct BatchItemResult {
  TestVerdict verdict;
  TestbenchSpec testbench;
  /// Hierarchical scope of this item's testbench inside the batch top, used
  /// to pick its signals out of the shared VCD ("batch_top.t3").
  std::string scope;
  bool compiled = false;
  bool timed_out = false;
  std::string log_excerpt;
};

struct BatchResult {
  std::vector<BatchItemResult> items;
  std::optional<std::string> vcd;
  std::size_t simulator_builds = 0;
};

struct BatchOptions {
  bool dump_vcd = false;
  /// Items per simulator build.
  std::size_t chunk_size = 100;
};

inline constexpr const char* kBatchTop = "batch_top";

/// Simulates every item against its own generated testbench. Items are
/// grouped into single builds (DUT modules renamed per item); when a group
/// fails to build, its items are retried one by one so one bad artifact
/// cannot hide the others' verdicts. With dump_vcd the result keeps one VCD
/// per group; only supported when everything fits in one group.
BatchResult run_batch(const Simulator& sim, const std::vector<BatchItem>& items,
                      const BatchOptions& options = {});

/// Runs run_batch over chunks on up to `threads` worker threads (external
/// processes remain bounded by ProcessSlots). Results keep item order.
std::vector<BatchItemResult> verify_all(const Simulator& sim, const std::vector<BatchItem>& items,
                                        std::size_t chunk_size, unsigned threads);

}  // namespace vforge::verilog

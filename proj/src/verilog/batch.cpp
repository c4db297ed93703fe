#include "vforge/verilog/batch.hpp"

#include <atomic>
#include <mutex>
#include <regex>
#include <stdexcept>
#include <thread>

#include "vforge/core/text.hpp"

namespace vforge::verilog {

TestVerdict parse_verdict(const std::string& log, const std::string& tag,
                          std::size_t expected_checks) {
  TestVerdict v;
  v.expected_checks = expected_checks;
  const auto summary = "SUMMARY " + tag + ": ";
  const auto mismatch = "MISMATCH " + tag + ": ";
  static const std::regex counts(R"(PASS=(\d+) FAIL=(\d+))");
  for (const auto& line : text::split_lines(log)) {
    if (line.rfind(summary, 0) == 0) {
      std::smatch m;
      if (std::regex_search(line, m, counts)) {
        v.summary_seen = true;
        v.pass_count = std::stoul(m[1]);
        v.fail_count = std::stoul(m[2]);
      }
    } else if (line.rfind(mismatch, 0) == 0) {
      v.mismatches.push_back(line);
    }
  }
  return v;
}

namespace {

std::string excerpt(const std::string& log) {
  constexpr std::size_t kMax = 4000;
  return log.size() <= kMax ? log : log.substr(0, kMax) + "\n...";
}

BatchResult run_group(const Simulator& sim, const std::vector<BatchItem>& items,
                      std::size_t first, std::size_t count, bool dump_vcd) {
  BatchResult out;
  std::vector<SourceFile> sources;
  std::string top = "`timescale 1ns/1ps\nmodule " + std::string(kBatchTop) + ";\n";
  std::uint64_t duration = 0;
  for (std::size_t j = 0; j < count; ++j) {
    const auto& item = items[first + j];
    const auto id = std::to_string(j);
    const auto dut_name = item.artifact.module_name + "__b" + id;
    auto dut_text = text::replace_identifier(item.artifact.module_text, item.artifact.module_name,
                                             dut_name);
    TestbenchOptions opt;
    opt.tb_name = "tb_" + id;
    opt.dut_module = dut_name;
    opt.standalone = false;
    opt.tag = "b" + id;
    opt.seed = item.seed;
    opt.random_tail = item.random_tail;
    auto tb = emit_testbench(item.artifact, opt);
    duration = std::max(duration, tb.spec.duration_ns);
    sources.push_back({"dut_" + id + ".v", std::move(dut_text)});
    sources.push_back({"tb_" + id + ".v", tb.text});
    top += "  tb_" + id + " t" + id + "();\n";

    BatchItemResult r;
    r.testbench = std::move(tb.spec);
    r.scope = std::string(kBatchTop) + ".t" + id;
    out.items.push_back(std::move(r));
  }
  top += "  initial begin\n";
  if (dump_vcd) top += "    $dumpfile(\"wave.vcd\");\n    $dumpvars(0, " + std::string(kBatchTop) + ");\n";
  top += "    #" + std::to_string(duration + 20) + " $finish;\n  end\nendmodule\n";
  sources.push_back({"batch_top.v", top});

  std::vector<std::string> collect;
  if (dump_vcd) collect.push_back("wave.vcd");
  const auto sim_result = sim.run(sources, kBatchTop, collect);
  out.simulator_builds = 1;
  const auto& log = sim_result.compiled ? sim_result.run_log : sim_result.compile_log;
  for (std::size_t j = 0; j < count; ++j) {
    auto& r = out.items[j];
    r.compiled = sim_result.compiled;
    r.timed_out = sim_result.timed_out;
    r.verdict = parse_verdict(sim_result.run_log, "b" + std::to_string(j), r.testbench.checked_count);
    if (!r.verdict.passed()) r.log_excerpt = excerpt(log);
  }
  if (const auto* vcd = sim_result.file("wave.vcd")) out.vcd = *vcd;
  return out;
}

}  // namespace

BatchResult run_batch(const Simulator& sim, const std::vector<BatchItem>& items,
                      const BatchOptions& options) {
  const std::size_t chunk = std::max<std::size_t>(1, options.chunk_size);
  if (options.dump_vcd && items.size() > chunk)
    throw std::invalid_argument("run_batch: VCD capture needs all items in one group");
  BatchResult out;
  for (std::size_t first = 0; first < items.size(); first += chunk) {
    const std::size_t count = std::min(chunk, items.size() - first);
    auto group = run_group(sim, items, first, count, options.dump_vcd);
    out.simulator_builds += group.simulator_builds;
    const bool build_failed = !group.items.empty() && !group.items.front().compiled;
    if (build_failed && count > 1) {
      for (std::size_t j = 0; j < count; ++j) {
        auto single = run_group(sim, items, first + j, 1, false);
        out.simulator_builds += single.simulator_builds;
        out.items.push_back(std::move(single.items.front()));
      }
      continue;
    }
    if (group.vcd) out.vcd = std::move(group.vcd);
    for (auto& r : group.items) out.items.push_back(std::move(r));
  }
  return out;
}

std::vector<BatchItemResult> verify_all(const Simulator& sim, const std::vector<BatchItem>& items,
                                        std::size_t chunk_size, unsigned threads) {
  chunk_size = std::max<std::size_t>(1, chunk_size);
  const std::size_t chunks = (items.size() + chunk_size - 1) / chunk_size;
  std::vector<std::vector<BatchItemResult>> parts(chunks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const std::size_t first = c * chunk_size;
        const std::size_t count = std::min(chunk_size, items.size() - first);
        std::vector<BatchItem> slice(items.begin() + static_cast<long>(first),
                                     items.begin() + static_cast<long>(first + count));
        BatchOptions opt;
        opt.chunk_size = chunk_size;
        parts[c] = run_batch(sim, slice, opt).items;
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<BatchItemResult> out;
  out.reserve(items.size());
  for (auto& p : parts)
    for (auto& r : p) out.push_back(std::move(r));
  return out;
}

}  // namespace vforge::verilog

#pragma once

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace vforge::verilog {

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  /// Combined stdout and stderr, truncated to the requested limit.
  std::string output;
  std::chrono::milliseconds elapsed{0};

  bool ok() const { return !timed_out && exit_code == 0; }
};

/// Runs `command` through /bin/sh -c inside `cwd` in its own process group.
/// On timeout the whole group is killed. Blocks until a global process slot
/// is free (see ProcessSlots).
ProcessResult run_shell(const std::string& command, const std::filesystem::path& cwd,
                        std::chrono::milliseconds timeout, std::size_t max_output = 1 << 20);

/// Process-wide bound on concurrently running external processes.
class ProcessSlots {
 public:
  static ProcessSlots& global();

  void set_limit(unsigned limit);
  unsigned limit() const;

  class Guard {
   public:
    explicit Guard(ProcessSlots& slots) : slots_(&slots) {}
    Guard(Guard&& other) noexcept : slots_(std::exchange(other.slots_, nullptr)) {}
    Guard(const Guard&) = delete;
    Guard& operator=(const Guard&) = delete;
    ~Guard() {
      if (slots_) slots_->release();
    }

   private:
    ProcessSlots* slots_;
  };

  Guard acquire();

 private:
  void release();

  mutable std::mutex mu_;
  std::condition_variable cv_;
  unsigned limit_ = 1;
  unsigned in_use_ = 0;
};

/// Resolves a program name against PATH (names containing '/' are checked
/// directly).
std::optional<std::filesystem::path> find_program(std::string_view program);

std::string shell_quote(std::string_view s);

/// Fresh directory under `root` (created if needed); removed on destruction
/// unless keep() was called.
class ScratchDir {
 public:
  explicit ScratchDir(const std::filesystem::path& root);
  ~ScratchDir();
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  void keep() { keep_ = true; }

 private:
  std::filesystem::path path_;
  bool keep_ = false;
};

/// $VFORGE_TMPDIR, else the system temp directory, plus "vforge".
std::filesystem::path default_work_root();

}  // namespace vforge::verilog

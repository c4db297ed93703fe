#include "vforge/verilog/process.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <thread>

#include "vforge/core/text.hpp"

namespace vforge::verilog {

ProcessSlots& ProcessSlots::global() {
  static ProcessSlots slots;
  return slots;
}

void ProcessSlots::set_limit(unsigned limit) {
  {
    std::lock_guard lock(mu_);
    limit_ = limit == 0 ? 1 : limit;
  }
  cv_.notify_all();
}

unsigned ProcessSlots::limit() const {
  std::lock_guard lock(mu_);
  return limit_;
}

ProcessSlots::Guard ProcessSlots::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return in_use_ < limit_; });
  ++in_use_;
  return Guard(*this);
}

void ProcessSlots::release() {
  {
    std::lock_guard lock(mu_);
    --in_use_;
  }
  cv_.notify_one();
}

ProcessResult run_shell(const std::string& command, const std::filesystem::path& cwd,
                        std::chrono::milliseconds timeout, std::size_t max_output) {
  auto slot = ProcessSlots::global().acquire();
  const auto log_path = cwd / ".vforge-process.log";
  const auto start = std::chrono::steady_clock::now();

  const pid_t pid = fork();
  if (pid < 0) throw std::system_error(errno, std::generic_category(), "fork");
  if (pid == 0) {
    setpgid(0, 0);
    if (chdir(cwd.c_str()) != 0) _exit(126);
    const int fd = open(log_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) _exit(126);
    dup2(fd, STDOUT_FILENO);
    dup2(fd, STDERR_FILENO);
    close(fd);
    const int null_fd = open("/dev/null", O_RDONLY);
    if (null_fd >= 0) {
      dup2(null_fd, STDIN_FILENO);
      close(null_fd);
    }
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);

  ProcessResult result;
  int status = 0;
  auto delay = std::chrono::milliseconds(2);
  for (;;) {
    const pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) throw std::system_error(errno, std::generic_category(), "waitpid");
    if (std::chrono::steady_clock::now() - start > timeout) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      result.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(delay);
    if (delay < std::chrono::milliseconds(50)) delay *= 2;
  }
  // Reap stragglers left in the group (e.g. background children).
  kill(-pid, SIGKILL);

  result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  if (!result.timed_out) {
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    else if (WIFSIGNALED(status)) result.exit_code = 128 + WTERMSIG(status);
  }
  std::ifstream log(log_path, std::ios::binary);
  std::ostringstream ss;
  ss << log.rdbuf();
  result.output = ss.str();
  if (result.output.size() > max_output) result.output.resize(max_output);
  std::error_code ec;
  std::filesystem::remove(log_path, ec);
  return result;
}

std::optional<std::filesystem::path> find_program(std::string_view program) {
  if (program.empty()) return std::nullopt;
  auto executable = [](const std::filesystem::path& p) {
    return access(p.c_str(), X_OK) == 0 && !std::filesystem::is_directory(p);
  };
  if (program.find('/') != std::string_view::npos) {
    std::filesystem::path p(program);
    if (executable(p)) return p;
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  if (!path) return std::nullopt;
  for (const auto& dir : text::split(path, ':')) {
    if (dir.empty()) continue;
    auto candidate = std::filesystem::path(dir) / program;
    if (executable(candidate)) return candidate;
  }
  return std::nullopt;
}

std::string shell_quote(std::string_view s) {
  if (!s.empty() && s.find_first_not_of(
                        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_-./=:+,@") ==
                        std::string_view::npos)
    return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

ScratchDir::ScratchDir(const std::filesystem::path& root) {
  std::filesystem::create_directories(root);
  auto templ = (root / "job-XXXXXX").string();
  if (!mkdtemp(templ.data())) throw std::system_error(errno, std::generic_category(), "mkdtemp");
  path_ = templ;
}

ScratchDir::~ScratchDir() {
  if (keep_) return;
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::filesystem::path default_work_root() {
  if (const char* env = std::getenv("VFORGE_TMPDIR"); env && *env) return env;
  return std::filesystem::temp_directory_path() / "vforge";
}

}  // namespace vforge::verilog

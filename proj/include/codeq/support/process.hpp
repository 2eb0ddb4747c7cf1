#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace codeq {

struct ProcessOptions {
  std::vector<std::string> argv;
  std::string stdin_data;
  std::optional<std::filesystem::path> cwd;
  /// Added to (or overriding) the parent environment.
  std::vector<std::pair<std::string, std::string>> env;
  std::chrono::milliseconds timeout{30000};
};

struct ProcessResult {
  int exit_code = -1;
  bool signaled = false;
  bool timed_out = false;
  std::string out;
  std::string err;
  /// Set when the executable could not be started at all.
  std::optional<std::string> spawn_error;

  bool ok() const { return !spawn_error && !timed_out && !signaled && exit_code == 0; }
};

/// Runs a child process to completion. Standard input is fed while standard
/// output and error are drained, so arbitrarily large payloads in both
/// directions cannot deadlock on full pipe buffers.
ProcessResult run_process(const ProcessOptions& options);

}  // namespace codeq

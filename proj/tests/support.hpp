// Shared helpers for the test binaries: fixture paths and a tiny
// run-a-subprocess wrapper used by the CLI-facing tests.
#pragma once

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace support {

inline std::string fixture_path(const std::string& name) {
  return std::string(DG_FIXTURES_DIR) + "/" + name;
}

struct RunResult {
  int exit_code;
  std::string out;  // captured stdout (stderr folded in when merge is set)
};

inline RunResult run_command(const std::string& command, bool merge_stderr = false) {
  std::string full = command + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + command);
  std::string out;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

}  // namespace support

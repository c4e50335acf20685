#pragma once

// Runs the CLI binary in a scratch directory.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "jointslab/io.hpp"

namespace testing {

namespace fs = std::filesystem;

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag)
      : path_(fs::temp_directory_path() /
              ("jointslab-" + tag + "-" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const fs::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

// Exit status of `jointslab <args>`; stdout goes to `out` when given.
inline int run_cli(const std::string& args, const std::string& out = "",
                   bool quiet_stderr = true) {
  std::string cmd = std::string("\"") + JOINTSLAB_CLI + "\" " + args;
  cmd += out.empty() ? " > /dev/null" : " > \"" + out + "\"";
  if (quiet_stderr) cmd += " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_json(const std::string& path, const jointslab::io::json& j) {
  jointslab::io::write_text_file(path, jointslab::io::dump(j));
}

}  // namespace testing

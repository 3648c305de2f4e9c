#pragma once

#include <stdexcept>
#include <string>

namespace phaselift {

// Exit codes used by the CLI: 0 success, 2 bad config, 3 I/O, 4 solver.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitIoError = 3,
  kExitSolverError = 4,
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace phaselift

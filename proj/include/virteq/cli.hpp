#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "virteq/error.hpp"
#include "virteq/io.hpp"

namespace virteq::io {

// Names of the accepted commands, in help order.
const std::vector<std::string>& command_names();

struct CommandOptions {
  std::string command;
  std::vector<std::string> inputs;
  // Named references: f, g, k, functor, square, target, modules, probes.
  // Lists are comma separated.
  std::map<std::string, std::string> refs;
  std::optional<std::uint64_t> seed;
  std::optional<int> size;
  bool json = false;
};

struct CommandResult {
  int exit = 0;
  std::string output;
  std::string error;
};

// 0 true or success, 1 well-posed false, 2 input error, 3 budget.
int exit_code(ErrorKind kind);

// Runs one command against an already parsed workspace. Errors propagate.
CommandResult run_command(const Workspace& ws, const CommandOptions& opt);

// Parses the inputs and runs the command; every error becomes an exit code
// and a message.
CommandResult run_cli(const CommandOptions& opt);

}  // namespace virteq::io

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffp::cli {

// One leaf subcommand, the library operations it exercises, and an argv
// (without the program name) that runs it successfully.
struct Command {
  std::string path;
  std::vector<std::string> operations;
  std::vector<std::string> example;
};

const std::vector<Command>& registry();

// Exit codes: 0 ok, 1 a check failed, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffp::cli

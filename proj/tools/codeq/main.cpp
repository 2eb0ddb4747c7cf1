#include <unistd.h>

#include <iostream>

#include "codeq/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  bool interactive = ::isatty(STDIN_FILENO) && ::isatty(STDOUT_FILENO);
  return codeq::cli::run_app(args, std::cin, std::cout, std::cerr, interactive);
}

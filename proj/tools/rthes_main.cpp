#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include "rthes/service/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const bool interactive = isatty(STDIN_FILENO) != 0;
  return rthes::service::run_cli(args, std::cout, std::cerr, std::cin, interactive);
}

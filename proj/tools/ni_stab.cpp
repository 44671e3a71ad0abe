#include <iostream>
#include <string>
#include <vector>

#include "nistab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const nistab::CliResult result = nistab::run_cli(args);
  std::cout << result.out;
  std::cerr << result.err;
  std::cout.flush();
  return result.exit_code;
}

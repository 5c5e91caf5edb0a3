#include <iostream>
#include <string>
#include <vector>

#include "schatlab_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return schatlab::cli::run(std::move(args), std::cout, std::cerr);
}

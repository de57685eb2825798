#include <iostream>

#include "surfvortex_cli/runner.hpp"

int main(int argc, char** argv) {
  return surfvortex::cli::run_cli(argc, argv, std::cout, std::cerr);
}

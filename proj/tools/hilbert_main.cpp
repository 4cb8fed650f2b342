#include "hilbert/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return hilbert::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cin, std::cout, std::cerr);
}

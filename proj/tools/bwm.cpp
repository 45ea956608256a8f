#include <iostream>

#include "bwm/cli.hpp"

int main(int argc, char** argv) {
  return bwm::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

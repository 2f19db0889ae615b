#include <iostream>

#include "twostep/cli.hpp"

int main(int argc, char** argv) {
  return twostep::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

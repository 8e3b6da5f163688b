#include "cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  return hwm::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

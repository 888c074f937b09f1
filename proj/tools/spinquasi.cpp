#include <iostream>

#include "spinquasi/cli.hpp"

int main(int argc, char** argv) {
  return spinquasi::cli::run(argc, argv, std::cout, std::cerr);
}

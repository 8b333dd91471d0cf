#include <iostream>

#include "coopstab/cli.hpp"

int main(int argc, char** argv) {
  return coopstab::run_cli(argc, argv, std::cout, std::cerr);
}

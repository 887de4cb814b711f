#include <iostream>

#include "ltar/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return ltar::run_cli(argc, argv, std::cout, std::cerr);
}

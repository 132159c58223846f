#include <iostream>

#include "polytree_cli/cli.hpp"

int main(int argc, char** argv) {
  return polytree::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}

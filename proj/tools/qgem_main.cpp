#include "qgem/cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  return qgem::cli::run(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "loglin/cli.hpp"

int main(int argc, char** argv) {
  return loglin::cli::run(argc, argv, std::cout, std::cerr);
}

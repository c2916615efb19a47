#include <iostream>

#include "conedyn/cli.hpp"

int main(int argc, char** argv) {
  return conedyn::cli::run(argc, argv, std::cout, std::cerr);
}

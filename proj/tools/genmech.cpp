#include "genmech/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return genmech::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

#include <iostream>

#include "cubemill/cli.hpp"

int main(int argc, char** argv) {
  return cubemill::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

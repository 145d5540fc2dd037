#include <iostream>

#include "courant/cli.hpp"

int main(int argc, char** argv) {
  return courant::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

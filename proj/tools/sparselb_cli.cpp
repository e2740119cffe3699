#include <iostream>

#include "sparselb/experiment.hpp"

int main(int argc, char** argv) {
  return sparselb::run_cli(argc, argv, std::cout, std::cerr);
}

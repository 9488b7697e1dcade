#include <iostream>

#include "sealbid/cli.h"

int main(int argc, char** argv) {
  return sealbid::cli::Run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

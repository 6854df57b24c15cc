#include <iostream>

#include "guiact/cli.h"

int main(int argc, char** argv) {
  return guiact::RunCli(argc, argv, std::cout, std::cerr);
}

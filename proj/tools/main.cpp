#include <iostream>

#include "hlearn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hlearn::dispatch(args, std::cout, std::cerr);
}

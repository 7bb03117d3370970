#include <string>
#include <vector>

#include "neurorf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return neurorf::run_cli(args);
}

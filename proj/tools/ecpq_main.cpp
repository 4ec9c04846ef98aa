#include <iostream>
#include <string>
#include <vector>

#include "ecpq/cli.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv, argv + argc);
  return ecpq::cli::run(args, std::cout, std::cerr);
}

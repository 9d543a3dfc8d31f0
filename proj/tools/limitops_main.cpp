#include "limitops/cli.hpp"

int main(int argc, char **argv)
{
  return limitops::cliMain(argc, argv);
}

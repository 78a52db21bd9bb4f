#include <cstdio>

#include "CLI11.hpp"

int main(int argc, char** argv) {
  CLI::App app{"norm ball and fibered face toolkit"};
  app.set_version_flag("--version", "normfib 1.0.0");
  app.require_subcommand(0);
  CLI11_PARSE(app, argc, argv);
  std::puts("no subcommand given; see --help");
  return 0;
}

#include "svmc/cli.hpp"

int main(int argc, char** argv) { return svmc::cli_run(argc, argv); }

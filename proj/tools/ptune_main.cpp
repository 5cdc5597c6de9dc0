#include "ptune/cli.hpp"

int main(int argc, char** argv) { return ptune::cli_main(argc, argv); }

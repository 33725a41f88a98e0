#include "pbexact/cli.hpp"

int main(int argc, char** argv) { return pbexact::cli_main(argc, argv); }

#include "diffset/cli.hpp"

int main(int argc, char** argv) { return diffset::cli_run(argc, argv); }

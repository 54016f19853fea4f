#include "iqgt/cli.hpp"

int main(int argc, char** argv) { return iqgt::cli_main(argc, argv); }

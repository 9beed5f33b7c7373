#include "randsvd/cli.hpp"

int main(int argc, char** argv) { return randsvd::cli::run_cli(argc, argv); }

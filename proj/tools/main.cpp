#include "secpac/cli.hpp"

int main(int argc, char** argv) { return secpac::cli::run_cli(argc, argv); }

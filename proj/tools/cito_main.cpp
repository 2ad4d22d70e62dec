#include "cito/cli.hpp"

int main(int argc, char** argv) { return cito::run_cli(argc, argv); }

#include "bokstedt/cli.hpp"

int main(int argc, char** argv) { return bok::run_cli(argc, argv); }

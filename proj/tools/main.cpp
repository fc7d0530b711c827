#include "seglab/cli.hpp"

int main(int argc, char** argv) { return seglab::cli_main(argc, argv); }

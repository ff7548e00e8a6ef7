#include "ddelta/cli.hpp"

int main(int argc, char** argv) { return ddelta::cli_main(argc, argv); }

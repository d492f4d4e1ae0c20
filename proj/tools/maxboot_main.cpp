#include "maxboot/cli.hpp"

int main(int argc, char** argv) { return maxboot::run_cli(argc, argv); }

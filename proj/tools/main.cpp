#include "cisoid/harness/cli.hpp"

int main(int argc, char** argv) { return cisoid::harness::run_cli(argc, argv); }

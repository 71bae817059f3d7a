#include "hurst/cli.hpp"

int main(int argc, char** argv) { return hurst::run_command(argc, argv); }

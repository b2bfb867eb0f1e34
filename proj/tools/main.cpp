#include "semidyn/cli.hpp"

int main(int argc, char** argv) { return semidyn::run_cli(argc, argv); }

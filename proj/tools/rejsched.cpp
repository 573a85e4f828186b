#include <rejsched/harness/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return rejsched::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "rendezvous/cli.hpp"

int main(int argc, char** argv) { return rendezvous::run_cli(argc, argv, std::cout, std::cerr); }

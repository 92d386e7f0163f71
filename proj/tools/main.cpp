#include <iostream>

#include "horadam/cli.hpp"

int main(int argc, char** argv) { return horadam::run_cli(argc, argv, std::cout, std::cerr); }

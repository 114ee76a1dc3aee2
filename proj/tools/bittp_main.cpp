#include <iostream>

#include "bittp/cli.hpp"

int main(int argc, char** argv) {
    return bittp::run_cli(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "clusterlens/cli.hpp"

int main(int argc, char** argv) {
    return clusterlens::cli::run(argc, argv, std::cout, std::cerr);
}

#include <exception>
#include <iostream>

#include "leafpower/cli_ops.hpp"

int main(int argc, char** argv) {
    try {
        return leafpower::run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

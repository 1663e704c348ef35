#include "nnd/cli.hpp"

int main(int argc, char** argv) {
    return nnd::cli::run(argc, argv);
}

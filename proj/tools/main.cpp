#include <vector>

#include "tgc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tgc::cli::run(args);
}

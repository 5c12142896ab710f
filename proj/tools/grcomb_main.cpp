#include "grcomb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return grcomb::cli_run(args, std::cout, std::cerr);
}

#include "bggfe/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bggfe::run_cli(args, std::cout, std::cerr);
}

#include <vector>

#include "tbage/cli.hpp"

int main(int argc, char** argv) {
    return tbage::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}

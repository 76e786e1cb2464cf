#include "prismatica/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return prismatica::run_cli(args, std::cout, std::cerr);
}

// Runs every acceptance criterion with runtimes and exits nonzero on any FAIL.

#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv)
{
    scissors::accept::Options options;
    for (int i = 1; i + 1 < argc; i += 2)
    {
        std::string flag = argv[i];
        if (flag == "--seed")
            options.seed = std::strtoull(argv[i + 1], nullptr, 10);
        else if (flag == "--fixture")
            options.fixture = argv[i + 1];
    }
    auto results = scissors::accept::run_all(options);
    scissors::accept::print_report(std::cout, results, true);
    return scissors::accept::all_passed(results) ? 0 : 1;
}

// Acceptance runner: one line per criterion, nonzero exit if any criterion fails.
//   acceptance [--verbose] [--json PATH] [--no-oracle] [--workers N]

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>

#include "omit/acceptance.hpp"

int main(int argc, char** argv)
{
    omit::acceptance::Options opt;
    bool verbose = false;
    const char* json = nullptr;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--verbose")) verbose = true;
        else if (!std::strcmp(argv[i], "--no-oracle")) opt.oracle = false;
        else if (!std::strcmp(argv[i], "--json") && i + 1 < argc) json = argv[++i];
        else if (!std::strcmp(argv[i], "--workers") && i + 1 < argc) opt.workers = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--verbose] [--json PATH] [--no-oracle] [--workers N]\n";
            return 1;
        }
    }
    std::cout.precision(6);
    const auto report = omit::acceptance::run(opt);
    omit::acceptance::print(std::cout, report, verbose);
    if (json) std::ofstream(json) << omit::acceptance::to_json(report).dump(2) << '\n';
    return report.passed() ? 0 : 1;
}

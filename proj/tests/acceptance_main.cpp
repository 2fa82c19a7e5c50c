// Acceptance harness: runs every criterion at its pinned tolerance and
// prints one pass/fail line per criterion.

#include <cstring>
#include <iostream>
#include <string>

#include "nablafrac/verify.hpp"

int main(int argc, char** argv) {
    nablafrac::verify::Options opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            opt.seed = std::stoull(argv[++i]);
        } else if (std::strcmp(argv[i], "--parallel") == 0) {
            opt.parallel = true;
        } else {
            std::cerr << "usage: acceptance [--seed N] [--parallel]\n";
            return 2;
        }
    }
    std::cout << "seed " << opt.seed << '\n';
    bool ok = nablafrac::verify::report(nablafrac::verify::run_all(opt), std::cout);
    return ok ? 0 : 1;
}

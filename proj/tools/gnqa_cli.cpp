#include <iostream>
#include <string>
#include <vector>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "gnqa/cli.hpp"

int main(int argc, char** argv) {
#if defined(__GLIBC__)
    // Desk-scale solves allocate 2^n scratch vectors above the allocator's
    // mmap threshold; raising it lets iteration loops reuse the blocks
    // instead of round-tripping fresh pages through the kernel.
    mallopt(M_MMAP_THRESHOLD, 1 << 30);
#endif
    std::vector<std::string> args(argv + 1, argv + argc);
    return gnqa::cli::run(std::move(args), std::cout, std::cerr);
}

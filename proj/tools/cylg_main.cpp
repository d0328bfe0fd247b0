// Command-line entry point; subcommands are registered as the library grows.
#include <cstdio>

#include "cylg/version.hpp"

int main() {
    std::printf("cylg %s\n", cylg::version_string());
    return 0;
}

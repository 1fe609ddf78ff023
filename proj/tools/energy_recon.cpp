#include <cstdio>

#include "enrec/image.hpp"

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::printf("energy-recon: commands not wired up yet\n");
    return 0;
}

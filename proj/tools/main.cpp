#include "cli_main.hpp"

int main(int argc, char** argv) { return orbitgrowth::cli_main(argc, argv); }

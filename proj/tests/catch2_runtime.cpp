// Compiles the amalgamated Catch2 implementation (and its default main)
// exactly once for the whole test binary.
#include <catch2/catch_amalgamated.cpp>

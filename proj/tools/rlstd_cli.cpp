#include "rlstd/harness.hpp"

int main(int argc, char** argv) { return rlstd::cli_main(argc, argv); }

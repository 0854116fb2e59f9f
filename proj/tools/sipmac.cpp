#include "sipmac/cli.hpp"

int main(int argc, char** argv) { return sipmac::cli::main(argc, argv); }

#include "convex_enclose/cli.hpp"

int main(int argc, char** argv) { return convex_enclose::cli::run(argc, argv); }

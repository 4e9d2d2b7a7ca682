#include "bcl/cli.hpp"

int main(int argc, char** argv) { return bcl::cli::run(argc, argv); }

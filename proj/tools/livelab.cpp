#include "livelab/cli/cli.hpp"

int main(int argc, char** argv) { return livelab::cli::run(argc, argv); }

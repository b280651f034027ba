#include "cli.hpp"

int main(int argc, char** argv) { return subplanck::cli::run(argc, argv); }

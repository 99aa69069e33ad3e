#include "cli.hpp"

int main(int argc, char** argv) { return rittlab::cli::run(argc, argv); }

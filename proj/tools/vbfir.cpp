#include "cli.hpp"

int main(int argc, char** argv) { return vbfir::cli::run(argc, argv); }

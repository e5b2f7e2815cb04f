#include "ckspec/cli.hpp"

int main(int argc, char** argv) { return ckspec::cli::run(argc, argv); }

#include "ffprog/cli.hpp"

int main(int argc, char** argv) { return ffprog::cli::run(argc, argv); }

#include "hdrflow/cli/app.hpp"

int main(int argc, char **argv) { return hdrflow::cli::main(argc, argv); }

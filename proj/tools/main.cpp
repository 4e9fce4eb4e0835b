#include "superdense/cli.hpp"

int main(int argc, char** argv) { return superdense::cli::main_entry(argc, argv); }

#include "satsec/cli.hpp"

int main(int argc, char** argv) { return satsec::cli::main_entry(argc, argv); }

#include "cli/commands.hpp"

int main(int argc, char** argv) { return cosa::cli::run(argc, argv); }

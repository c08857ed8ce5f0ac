#include "edgesched/cli.hpp"

int main(int argc, char** argv) { return edgesched::cli::run(argc, argv); }

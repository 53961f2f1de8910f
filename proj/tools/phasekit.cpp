#include "commands.hpp"

int main(int argc, char** argv) { return phasekit::cli::run(argc, argv); }

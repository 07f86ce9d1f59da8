#include "microgrid/cli.hpp"

int main(int argc, char** argv) { return microgrid::cli_main(argc, argv); }

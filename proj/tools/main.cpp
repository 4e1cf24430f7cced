#include "rheaom/cli.hpp"

int main(int argc, char** argv) { return rheaom::cli_main(argc, argv); }

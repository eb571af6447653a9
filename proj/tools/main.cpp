#include "hgail/cli.hpp"

int main(int argc, char** argv) { return hgail::run_cli(argc, argv); }

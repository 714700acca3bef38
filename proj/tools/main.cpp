#include "idde/cli.hpp"

int main(int argc, char** argv) { return idde::run_cli(argc, argv); }

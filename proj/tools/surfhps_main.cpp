#include "surfhps/cli_app.hpp"

int main(int argc, char** argv) { return surfhps::run_cli(argc, argv); }

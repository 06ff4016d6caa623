#include "vml/cli/commands.hpp"

int main(int argc, char** argv) { return vml::cli_main(argc, argv); }

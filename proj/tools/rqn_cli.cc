#include "rqn/cli/commands.h"

int main(int argc, char** argv) { return rqn::cli::run(argc, argv); }

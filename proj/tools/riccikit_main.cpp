#include "riccikit/cli.hpp"

int main(int argc, char** argv) { return riccikit::cli::run(argc, argv); }

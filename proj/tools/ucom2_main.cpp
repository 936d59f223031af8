#include "ucom2/cli.hpp"

int main(int argc, char** argv) { return ucom2::cli::run(argc, argv); }

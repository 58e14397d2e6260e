#include "cli.hpp"

int main(int argc, char** argv) { return biham::cli::run(argc, argv); }

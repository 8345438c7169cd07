#include "cartier/cli.hpp"

int main(int argc, char** argv) { return cartier::cli::run(argc, argv); }

#include "cli.hpp"

int main(int argc, char** argv) { return ellipack::cli::run(argc, argv, std::cout, std::cerr); }

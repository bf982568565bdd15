#include "hl/cli.hpp"

int main(int argc, char** argv) { return hl::parse_and_dispatch(argc, argv); }

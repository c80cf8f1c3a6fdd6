#include "lowreg/cli/app.hpp"

int main(int argc, char** argv) { return lowreg::cli::parse_and_dispatch(argc, argv); }

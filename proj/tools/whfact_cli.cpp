// SPDX-License-Identifier: MIT
#include "cli.hpp"

int main(int argc, char** argv) { return whfact::cli::main_entry(argc, argv); }

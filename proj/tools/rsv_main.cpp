#include "rsv/cli.hpp"

int main(int argc, char** argv) { return rsv::main_entry(argc, argv); }

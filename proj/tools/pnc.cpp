#include "pnc/harness.hpp"

int main(int argc, char** argv) { return pnc::run_cli(argc, argv); }

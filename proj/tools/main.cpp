#include "harness.hpp"

int main(int argc, char** argv) { return aoi::cli::run_cli(argc, argv); }

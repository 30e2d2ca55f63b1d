#include "cli_app.hpp"

int main(int argc, char** argv) { return umbrella::run_cli(argc, argv); }

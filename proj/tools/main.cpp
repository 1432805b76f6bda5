#include "cli_app.hpp"

int main(int argc, char** argv) { return posetramsey::cli::run(argc, argv); }

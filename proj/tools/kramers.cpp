#include "kramers/cli.hpp"

int main(int argc, char** argv) { return kramers::run(argc, argv); }

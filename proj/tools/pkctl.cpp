#include "pk/cli.hpp"

int main(int argc, char** argv) { return pk_run(argc, argv); }

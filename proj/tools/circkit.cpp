#include "circkit/cli.hpp"

int main(int argc, char** argv) { return circkit::run(argc, argv); }

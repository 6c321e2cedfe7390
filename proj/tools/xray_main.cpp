#include "xray/cli.hpp"

int main(int argc, char** argv) { return xray::run(argc, argv); }

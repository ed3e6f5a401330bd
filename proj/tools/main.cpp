#include "binotrack/cli.hpp"

int main(int argc, char** argv) {
    return binotrack::cli_main(argc, argv);
}

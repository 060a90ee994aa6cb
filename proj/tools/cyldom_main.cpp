#include "cyldom/cli.hpp"

int main(int argc, char** argv) {
    return cyldom::cli::dispatch(argc, argv);
}

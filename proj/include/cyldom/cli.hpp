#pragma once

#include <string>

namespace cyldom::cli {

struct RunConfig {
    int threads = 0;          // 0: hardware concurrency; flag beats env
    int checkpoint_every = 10;
    std::string format = "text"; // text|json where a choice exists
    bool quiet = false;
};

// Routes argv to the subcommands. Returns 0 on success, 1 on domain or
// usage errors, 2 on I/O errors. Diagnostics go to stderr, data to stdout
// or the requested output file.
int dispatch(int argc, const char* const* argv);

} // namespace cyldom::cli

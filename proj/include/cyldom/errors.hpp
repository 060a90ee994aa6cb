#pragma once

#include <stdexcept>
#include <string>

namespace cyldom {

// Domain / validation failures. The CLI maps these to exit code 1.
struct bounds_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// Arc-only operations (nd, arc labels) called on a non-arc pair.
struct relation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct encoding_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// A pattern construction failed its own domination check.
struct construction_error : std::logic_error {
    using std::logic_error::logic_error;
};
// A finite tropical sum reached the infinity sentinel.
struct overflow_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// I/O failures. The CLI maps these to exit code 2.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct resume_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cyldom

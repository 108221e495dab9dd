#pragma once

#include <stdexcept>
#include <string>

namespace standopt {

// Configuration file problems (bad keys, unparsable values, missing files).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data table ingestion problems (missing rows, invariant violations).
struct table_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degenerate simulation states (shrinking stands, non-positive capital).
struct simulation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace standopt

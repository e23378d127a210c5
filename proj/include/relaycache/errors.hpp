#pragma once

#include <stdexcept>

namespace relaycache {

// Invalid configuration or input; CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model or numerical inconsistency (e.g. b0 + b2 > 1); CLI maps this to exit code 3.
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}

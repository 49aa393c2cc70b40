#pragma once

#include <stdexcept>
#include <string>

namespace retscale {

// Bad configuration, arguments or preconditions. The CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or unusable input data, I/O failures. The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace retscale

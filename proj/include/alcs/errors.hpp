#ifndef ALCS_ERRORS_HPP
#define ALCS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace alcs {

/// Bad input data (malformed file, inconsistent rows, unusable dataset).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration or argument value.
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace alcs

#endif

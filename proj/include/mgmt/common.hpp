#pragma once

#include <stdexcept>
#include <string>

namespace mgmt {

/// Bad command line arguments, malformed configuration. CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Unreadable or malformed input data (files, tables, volumes). CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace mgmt

#pragma once

#include <stdexcept>
#include <string>

namespace iscc {

struct InvalidParameter : std::runtime_error {
    explicit InvalidParameter(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularChannel : std::runtime_error {
    explicit SingularChannel(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoNullSpace : std::runtime_error {
    explicit NoNullSpace(const std::string& msg) : std::runtime_error(msg) {}
};

struct Instability : std::runtime_error {
    explicit Instability(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace iscc

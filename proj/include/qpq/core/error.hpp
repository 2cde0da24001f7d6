#pragma once

#include <stdexcept>
#include <string>

namespace qpq {

struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct precondition_failed : std::runtime_error {
    std::string residual;
    precondition_failed(const std::string& what, std::string witness = {})
        : std::runtime_error(what), residual(std::move(witness)) {}
};

struct bound_overflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unsupported : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace qpq

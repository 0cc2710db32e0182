#pragma once

#include <stdexcept>
#include <string>

namespace acredit {

// Malformed user input: ranking codes, record files, bad parameters.
// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical fault that indicates a bug rather than bad input
// (e.g. a variance radicand below -1e-12). CLI exit code 1.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace acredit

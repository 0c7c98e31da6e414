#pragma once

#include <stdexcept>
#include <string>

namespace sze {

// Base type for everything the library throws.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated operation precondition or broken type invariant.
class contract_error : public error {
public:
    using error::error;
};

// Malformed input; the message carries the offending line number.
class parse_error : public error {
public:
    using error::error;
};

// Filesystem failure (missing file, failed write).
class io_error : public error {
public:
    using error::error;
};

// Classes too small for the certificate size bounds at the given epsilon.
class degenerate_scale : public error {
public:
    using error::error;
};

// A certificate split could not be topped up to the target class size.
class degenerate_split : public error {
public:
    using error::error;
};

}  // namespace sze

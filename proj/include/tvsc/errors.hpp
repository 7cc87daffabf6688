#pragma once

#include <stdexcept>
#include <string>

namespace tvsc {

// Invalid data, flags, or files. The CLI maps this to exit code 2.
class BadInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested geometry does not fit inside the domain rectangle.
class GeometryOutOfDomain : public BadInput {
public:
    using BadInput::BadInput;
};

// An iterative solver hit max_iters before reaching its tolerance.
// The caller should relax tol or raise max_iters. CLI exit code 3.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, long iters_, double residual_)
        : std::runtime_error(what), iters(iters_), residual(residual_) {}
    long iters = 0;
    double residual = 0.0;
};

// Bisection range did not bracket the sought threshold.
class RangeExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tvsc

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncdisco {

// Bad input: malformed files, invalid parameters, mismatched graphs.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical trouble: singular covariance blocks, overflow, degenerate tests.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Equivalence-class enumeration hit its cap.
class ClassTooLarge : public NumericalError {
public:
    explicit ClassTooLarge(std::size_t cap)
        : NumericalError("equivalence class too large: more than " + std::to_string(cap) +
                         " DAG extensions (raise the cap or skip SID)"),
          cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

}  // namespace ncdisco

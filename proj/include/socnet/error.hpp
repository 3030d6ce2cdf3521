#pragma once

#include <stdexcept>
#include <string>

namespace socnet {

// Exception hierarchy. The CLI maps these onto exit codes:
// InputError/ParseError/ValidationError -> 2, ConvergenceError -> 3.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid value handed to a pure function (bad box, bad parameter).
class InputError : public Error {
public:
    using Error::Error;
};

/// Rejected wire-format input. `locus()` names the record or line.
class ParseError : public Error {
public:
    ParseError(std::string locus, const std::string& what)
        : Error(locus.empty() ? what : locus + ": " + what), locus_(std::move(locus)) {}

    const std::string& locus() const noexcept { return locus_; }

private:
    std::string locus_;
};

/// Configuration or cross-record consistency failure.
class ValidationError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual, int iterations)
        : Error(what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

}  // namespace socnet

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tvopt {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The Hessian could not be factorized even after the maximum ridge shift.
struct SingularHessian : Error {
    explicit SingularHessian(const std::string& what) : Error(what) {}
};

/// Requested window length cannot satisfy the scheme's moment constraints.
struct InvalidWindow : Error {
    explicit InvalidWindow(const std::string& what) : Error(what) {}
};

/// A weighted combination was requested over more history than is stored.
struct InsufficientHistory : Error {
    InsufficientHistory(std::size_t available, std::size_t requested)
        : Error("insufficient history: have " + std::to_string(available) +
                " observations, need " + std::to_string(requested)),
          available(available),
          requested(requested) {}
    std::size_t available;
    std::size_t requested;
};

/// The moment matrix of a minimum-norm weight problem is singular.
struct InfeasibleConstraints : Error {
    explicit InfeasibleConstraints(const std::string& what) : Error(what) {}
};

/// A sample-average estimator received no samples.
struct EmptySample : Error {
    explicit EmptySample(const std::string& what) : Error(what) {}
};

/// A rate fit was requested on degenerate abscissae.
struct DegenerateFit : Error {
    explicit DegenerateFit(const std::string& what) : Error(what) {}
};

/// Invalid experiment or scenario configuration; names the offending field.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace tvopt

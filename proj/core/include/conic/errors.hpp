#pragma once

#include <stdexcept>
#include <string>

namespace conic {

/// Argument outside the mathematical domain of an operation (x <= 0, c <= 0, u <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A hypothesis of the existence theory fails for the given metric: unbounded or
/// non-negative scalar curvature, an obstructed link, a degenerate barrier constant.
/// The CLI maps this to exit status 2.
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A supplied function produced a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AssemblyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an iterate breaks the ordering phi_{k-1} <= phi_k <= psi_k <= psi_{k-1}.
class MonotonicityError : public ConvergenceError {
public:
    MonotonicityError(const std::string& what, std::size_t iteration, std::size_t node)
        : ConvergenceError(what), iteration_(iteration), node_(node) {}

    std::size_t iteration() const noexcept { return iteration_; }
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t iteration_;
    std::size_t node_;
};

} // namespace conic

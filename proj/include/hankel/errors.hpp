#pragma once

#include <stdexcept>
#include <string>

namespace hankel {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An iterative procedure hit its resource cap without converging.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity fell below the representable range needed by an operation.
class UnderflowError : public std::runtime_error {
public:
    explicit UnderflowError(const std::string& what) : std::runtime_error(what) {}
};

/// A non-finite value appeared while evaluating a user-supplied function.
class EvaluationError : public std::runtime_error {
public:
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal invariant broken (e.g. sign convention lost).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace hankel

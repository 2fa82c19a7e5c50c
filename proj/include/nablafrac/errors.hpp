#pragma once

#include <stdexcept>
#include <string>

namespace nablafrac {

/// Rising function hit its undefined case: t+r is a nonpositive integer
/// while t is not.
class UndefinedRising : public std::domain_error {
public:
    explicit UndefinedRising(const std::string& what) : std::domain_error(what) {}
};

/// An operator was asked for more grid points than its input provides.
class InsufficientDomain : public std::invalid_argument {
public:
    explicit InsufficientDomain(const std::string& what) : std::invalid_argument(what) {}
};

/// A boundary system that theory guarantees nonsingular came out singular.
/// Reaching this is a bug signal, not a user error.
class SingularSystem : public std::runtime_error {
public:
    explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nablafrac

#pragma once

#include <stdexcept>
#include <string>

namespace thirring {

/// Evaluation requested on a point where the closed form is singular
/// (x = 0 at t = 0 with ε = 0, or a characteristic line |x| = t).
class SingularPointError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Parameter outside its domain, or a mesh query whose cone of
/// dependence leaves the computed region.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Fixed-point iteration of the lattice integrator failed to contract.
class StepSizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace thirring

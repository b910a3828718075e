#pragma once

#include <stdexcept>
#include <string>

namespace deltapol {

// Bad physical or numerical parameters (non-positive coupling, absurd grid, ...).
struct invalid_params : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation outside an operation's domain (wrong branch, negative frequency, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Resolvent requested at (or numerically on top of) the bound-state pole.
struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Resolvent requested exactly at the continuum edge E = 0.
struct branch_point_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Quadrature or series estimation failed to converge; message carries diagnostics.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Box discretization too coarse for the state it is supposed to resolve.
struct discretization_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace deltapol

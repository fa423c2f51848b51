#pragma once

#include <stdexcept>
#include <string>

namespace btforms {

/// Raised for invalid arguments: non-positive masses, off-shell momenta,
/// mismatched dimensions.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A momentum left the front-form chart (p^+ <= 0).
class ChartExit : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The discretized mass operator m + V is not positive.
class ModelRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ill-conditioned numerical setup (e.g. an on-shell point on a grid node).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace btforms

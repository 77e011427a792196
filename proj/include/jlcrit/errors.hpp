#pragma once

#include <stdexcept>
#include <string>

namespace jlcrit {

/// Raised when an argument lies outside the admissible parameter set.
/// The message names the violated constraint.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A root finder or search failed to bracket/converge where success was expected.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace jlcrit

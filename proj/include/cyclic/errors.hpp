#pragma once

#include <stdexcept>
#include <string>

namespace cyclic {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a conditional law is requested on a boundary stratum
/// (N(t) < d), where U(t) = ct and there is no density in u.
class SingularStratumError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace cyclic

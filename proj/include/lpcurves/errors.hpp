#pragma once

#include <stdexcept>
#include <string>

namespace lpcurves {

/// Argument outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Witness construction requested for a time that is not in K.
class NotInKError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Input the implementation deliberately does not handle (irrational times,
/// non-interior density points, ...).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bounded search ran out of budget.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Egorov step j has no admissible n in the profile's n list.
class ProfileTooCoarse : public InfeasibleError {
public:
    ProfileTooCoarse(long step, const std::string& what) : InfeasibleError(what), step_(step) {}
    long step() const { return step_; }

private:
    long step_;
};

/// Sampled data too small or too coarse for the requested extraction.
class SizingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lpcurves

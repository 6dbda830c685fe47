#pragma once

#include <stdexcept>
#include <string>

namespace noma {

// Argument outside the mathematical domain of a formula (negative SINR,
// alpha outside (0,1), gamma_w = 0 for the bound calculators, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Pair passed as (strong, weak) with gamma_s < gamma_w.
class OrderingError : public DomainError {
public:
    explicit OrderingError(const std::string& what) : DomainError(what) {}
};

// Denominator of a closed-form bound vanished.
class SingularityError : public std::runtime_error {
public:
    explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

// Empty power-split interval for a pair that was asked to be NOMA.
class FeasibilityError : public std::runtime_error {
public:
    explicit FeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

// Bad tables, bad config files, bad user files.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace noma

#pragma once

#include <stdexcept>
#include <string>

namespace ctvol {

/**
 * Raised when matrix or vector dimensions do not match the operation.
 */
class DimensionError : public std::runtime_error {
public:
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Raised when a matrix required to be invertible is singular.
 */
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Raised when an input violates a rank requirement.
 */
class RankError : public std::runtime_error {
public:
    explicit RankError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Raised when an operation's structural precondition fails (empty or
 * unbounded polytope, missing positive vector, non-simple vertex, ...).
 */
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Raised when an input is degenerate for the elimination (zero column or
 * zero row where a pivot is required).
 */
class DegenerateInputError : public std::runtime_error {
public:
    explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Raised when a beta vector fails the admissibility conditions of the
 * constant-term formula.
 */
class InadmissibleBetaError : public std::runtime_error {
public:
    explicit InadmissibleBetaError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Raised when a randomly drawn beta must be rejected and the caller should
 * resample with a fresh draw.
 */
class BetaRejectedError : public std::runtime_error {
public:
    explicit BetaRejectedError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Raised when an enumeration would exceed its work budget.
 */
class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Raised on malformed input files or malformed rational literals.
 */
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Raised when an internal identity that the mathematics guarantees fails to
 * hold; indicates a bug, never bad user input.
 */
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ctvol

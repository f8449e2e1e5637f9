#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace thetanf {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shape mismatch (non-square where square required, size disagreement, ...).
struct DimensionError : Error {
    using Error::Error;
};

/// Symmetric matrix failed the positive-definiteness test; `index` is the
/// 1-based leading minor at which the LDL pivot became non-positive.
struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(std::size_t index)
        : Error("matrix not positive definite at leading minor " + std::to_string(index)),
          index(index) {}
    std::size_t index;
};

struct SingularForm : Error {
    SingularForm() : Error("quadratic form is singular") {}
};

struct NotSeparable : Error {
    NotSeparable() : Error("polynomial is not squarefree") {}
};

/// Supplied basis does not generate an order (non-integral trace pairing).
struct NotAnOrder : Error {
    using Error::Error;
};

/// The power order Z[theta] is not maximal at prime p and no basis was given.
struct NotMaximal : Error {
    explicit NotMaximal(mpz_class p)
        : Error("power order is not maximal at p = " + p.get_str()), p(std::move(p)) {}
    mpz_class p;
};

struct DiscMismatch : Error {
    using Error::Error;
};

struct NotTotallyReal : Error {
    using Error::Error;
};

struct UnsupportedRank : Error {
    using Error::Error;
};

/// Input outside the supported scope (non-squarefree modulus, ...).
struct Unsupported : Error {
    using Error::Error;
};

/// A proven identity failed at runtime; indicates a bug, not bad input.
struct InvariantViolation : Error {
    using Error::Error;
};

/// Corpus line could not be parsed.
struct ParseError : Error {
    ParseError(long line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line(line) {}
    long line;
};

struct NonMonic : Error {
    using Error::Error;
};

struct DegreeOutOfRange : Error {
    using Error::Error;
};

}  // namespace thetanf

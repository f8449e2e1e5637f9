#pragma once

#include <vector>

#include "thetanf/matrix.hpp"

namespace thetanf::linalg {

/// Exact determinant by fraction-free (Bareiss) elimination.
/// Throws DimensionError for non-square input.
Int det_bareiss(const IntMatrix& m);

/// Rank over the rationals, by fraction-free elimination.
std::size_t rank_exact(const IntMatrix& m);

struct HnfResult {
    IntMatrix h;        // row-style Hermite normal form, zero rows at the bottom
    IntMatrix u;        // unimodular, h = u * m
    std::size_t rank;   // number of nonzero rows of h
};

/// Row-style HNF with transform. Normalization: pivots positive, entries
/// above each pivot reduced into [0, pivot).
HnfResult hnf_with_transform(const IntMatrix& m);

/// Basis (rows) of the saturated right kernel {x in Z^n : m x^T = 0}.
/// Rows are returned in HNF, so the output is canonical; row count is
/// n - rank(m) and the spanned lattice is primitive in Z^n.
IntMatrix kernel_saturated(const IntMatrix& m);

struct LdlResult {
    RatMatrix l;         // unit lower triangular
    std::vector<Rat> d;  // positive pivots, g = l diag(d) l^T
};

/// Exact LDL^T factorization of a symmetric matrix. Succeeds exactly when
/// the matrix is positive definite; otherwise throws NotPositiveDefinite
/// with the 1-based index of the failing leading minor.
LdlResult ldl(const IntMatrix& g);

struct LllResult {
    IntMatrix gram;  // delta-LLL-reduced, = u^T g u
    IntMatrix u;     // unimodular change of basis
};

/// LLL reduction working directly on the Gram matrix with exact rational
/// Gram-Schmidt data. delta must lie in (1/4, 1].
LllResult lll_gram(const IntMatrix& g, const Rat& delta = Rat(3, 4));

/// Adjugate matrix, adj(m) * m = det(m) * I. Cofactor expansion; intended
/// for the small ranks this library works at.
IntMatrix adjugate(const IntMatrix& m);

/// Exact inverse of a matrix with det = +-1.
IntMatrix unimodular_inverse(const IntMatrix& u);

}  // namespace thetanf::linalg

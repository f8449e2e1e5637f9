#include "thetanf/linalg.hpp"

#include <algorithm>
#include <utility>

#include "thetanf/errors.hpp"

namespace thetanf::linalg {

namespace {

// Fraction-free row echelon (Bareiss). Works on a copy, allows column pivot
// search, returns (echelon rank, sign of row/column permutation, last pivot).
// After step k the remaining block is divided exactly by the previous pivot.
struct EchelonOutcome {
    std::size_t rank = 0;
    int sign = 1;
    Int last_pivot = 1;
};

EchelonOutcome bareiss_echelon(IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    EchelonOutcome out;
    Int prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t piv = r;
        while (piv < m && a(piv, c) == 0) ++piv;
        if (piv == m) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(r, j), a(piv, j));
            out.sign = -out.sign;
        }
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                Int t = a(r, c) * a(i, j) - a(i, c) * a(r, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    out.rank = r;
    out.last_pivot = prev;
    return out;
}

}  // namespace

Int det_bareiss(const IntMatrix& m) {
    if (!m.is_square()) throw DimensionError("det_bareiss: matrix is not square");
    if (m.rows() == 0) return 1;
    IntMatrix a = m;
    EchelonOutcome e = bareiss_echelon(a);
    if (e.rank < m.rows()) return 0;
    // Bareiss keeps the last pivot equal to the determinant up to the sign
    // of the row swaps performed.
    return e.sign < 0 ? Int(-e.last_pivot) : e.last_pivot;
}

std::size_t rank_exact(const IntMatrix& m) {
    IntMatrix a = m;
    return bareiss_echelon(a).rank;
}

HnfResult hnf_with_transform(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(rows);

    auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < cols; ++j) h(dst, j) -= q * h(src, j);
        for (std::size_t j = 0; j < rows; ++j) u(dst, j) -= q * u(src, j);
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols; ++j) std::swap(h(a, j), h(b, j));
        for (std::size_t j = 0; j < rows; ++j) std::swap(u(a, j), u(b, j));
    };
    auto row_negate = [&](std::size_t a) {
        for (std::size_t j = 0; j < cols; ++j) h(a, j) = -h(a, j);
        for (std::size_t j = 0; j < rows; ++j) u(a, j) = -u(a, j);
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Euclid over rows r.. in this column until a single nonzero remains.
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (h(i, c) == 0) continue;
                if (best == rows ||
                    mpz_cmpabs(h(i, c).get_mpz_t(), h(best, c).get_mpz_t()) < 0)
                    best = i;
            }
            if (best == rows) break;  // column is zero below r
            row_swap(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h(i, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
                row_sub(i, r, q);
                if (h(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) row_negate(r);
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            row_sub(i, r, q);
        }
        ++r;
    }
    return {std::move(h), std::move(u), r};
}

IntMatrix kernel_saturated(const IntMatrix& m) {
    const std::size_t n = m.cols();
    HnfResult ht = hnf_with_transform(m.transpose());
    // Rows of the transform aligned with zero rows of the HNF span the
    // saturated kernel exactly (the transform is unimodular).
    IntMatrix raw(n - ht.rank, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < ht.h.cols(); ++j)
            if (ht.h(i, j) != 0) { zero = false; break; }
        if (!zero) continue;
        for (std::size_t j = 0; j < n; ++j) raw(k, j) = ht.u(i, j);
        ++k;
    }
    HnfResult canon = hnf_with_transform(raw);
    IntMatrix out(raw.rows(), n);
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = canon.h(i, j);
    return out;
}

LdlResult ldl(const IntMatrix& g) {
    if (!g.is_symmetric()) throw DimensionError("ldl: matrix is not symmetric");
    const std::size_t n = g.rows();
    LdlResult res{RatMatrix::identity(n), std::vector<Rat>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rat s(g(i, j));
            for (std::size_t k = 0; k < j; ++k) s -= res.l(i, k) * res.l(j, k) * res.d[k];
            res.l(i, j) = s / res.d[j];
            res.l(i, j).canonicalize();
        }
        Rat s(g(i, i));
        for (std::size_t k = 0; k < i; ++k) s -= res.l(i, k) * res.l(i, k) * res.d[k];
        if (s <= 0) throw NotPositiveDefinite(i + 1);
        res.d[i] = s;
        res.d[i].canonicalize();
    }
    return res;
}

namespace {

// Incremental Gram-Schmidt data for LLL, recomputed from the Gram matrix.
// Cheap at the ranks this library sees (<= 6).
struct Gso {
    RatMatrix mu;
    std::vector<Rat> b;
};

Gso gso_of(const IntMatrix& g) {
    LdlResult f = ldl(g);
    return {std::move(f.l), std::move(f.d)};
}

}  // namespace

LllResult lll_gram(const IntMatrix& g, const Rat& delta) {
    if (!g.is_symmetric()) throw DimensionError("lll_gram: matrix is not symmetric");
    if (delta <= Rat(1, 4) || delta > 1) throw Unsupported("lll_gram: delta outside (1/4, 1]");
    const std::size_t n = g.rows();
    IntMatrix a = g;
    IntMatrix u = IntMatrix::identity(n);
    if (n <= 1) {
        ldl(a);  // rejects non-positive-definite input
        return {std::move(a), std::move(u)};
    }

    // basis vector k <- k - q * j, expressed on the Gram matrix
    auto reduce = [&](std::size_t k, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < n; ++i) u(i, k) -= q * u(i, j);
        for (std::size_t i = 0; i < n; ++i) a(k, i) -= q * a(j, i);
        for (std::size_t i = 0; i < n; ++i) a(i, k) -= q * a(i, j);
    };
    auto swap_vectors = [&](std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < n; ++i) std::swap(u(i, x), u(i, y));
        for (std::size_t i = 0; i < n; ++i) std::swap(a(x, i), a(y, i));
        for (std::size_t i = 0; i < n; ++i) std::swap(a(i, x), a(i, y));
    };

    Gso gs = gso_of(a);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t jj = k; jj-- > 0;) {
            const Rat& mu = gs.mu(k, jj);
            if (mu > Rat(1, 2) || mu < Rat(-1, 2)) {
                reduce(k, jj, rat_round(mu));
                gs = gso_of(a);
            }
        }
        Rat lhs = gs.b[k];
        Rat rhs = (delta - gs.mu(k, k - 1) * gs.mu(k, k - 1)) * gs.b[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            swap_vectors(k, k - 1);
            gs = gso_of(a);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return {std::move(a), std::move(u)};
}

IntMatrix adjugate(const IntMatrix& m) {
    if (!m.is_square()) throw DimensionError("adjugate: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return m;
    if (n == 1) {
        IntMatrix r(1, 1);
        r(0, 0) = 1;
        return r;
    }
    IntMatrix adj(n, n);
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t mi = 0;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::size_t mj = 0;
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(mi, mj) = m(r, c);
                    ++mj;
                }
                ++mi;
            }
            Int cof = det_bareiss(minor);
            if ((i + j) % 2 != 0) cof = -cof;
            adj(j, i) = cof;  // transpose of the cofactor matrix
        }
    }
    return adj;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
    Int det = det_bareiss(u);
    if (det != 1 && det != -1) throw DimensionError("unimodular_inverse: |det| != 1");
    IntMatrix adj = adjugate(u);
    if (det == -1)
        for (std::size_t i = 0; i < adj.rows(); ++i)
            for (std::size_t j = 0; j < adj.cols(); ++j) adj(i, j) = -adj(i, j);
    return adj;
}

}  // namespace thetanf::linalg

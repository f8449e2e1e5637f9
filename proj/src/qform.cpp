#include "thetanf/qform.hpp"

#include <cmath>
#include <functional>
#include <utility>

#include "thetanf/errors.hpp"

namespace thetanf {

QuadraticForm::QuadraticForm(IntMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_symmetric()) throw DimensionError("QuadraticForm: Gram matrix must be symmetric");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        if (gram_(i, i) % 2 != 0)
            throw Unsupported("QuadraticForm: Gram diagonal must be even");
}

Int QuadraticForm::value(const std::vector<Int>& x) const {
    if (x.size() != rank()) throw DimensionError("QuadraticForm::value: wrong vector length");
    Int two_phi(0);
    for (std::size_t i = 0; i < rank(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < rank(); ++j) two_phi += x[i] * gram_(i, j) * x[j];
    }
    return two_phi / 2;
}

namespace {

// Depth-first traversal of {x != 0 : x^T G x <= two_bound} for a positive
// definite Gram matrix handed over as its exact LDL factorization.
// Coordinates are reported in the basis the factorization was taken in.
class Enumerator {
public:
    explicit Enumerator(const linalg::LdlResult& f) : f_(f), n_(f.d.size()) {}

    using Visit = std::function<void(const std::vector<Int>& x, const Int& two_phi)>;

    void run(const Int& two_bound, const Visit& visit) const {
        if (n_ == 0 || two_bound < 0) return;
        std::vector<Int> xs(n_, Int(0));
        descend(n_, Rat(two_bound), Rat(two_bound), xs, 0, visit);
    }

private:
    void descend(std::size_t level, const Rat& rem, const Rat& two_bound,
                 std::vector<Int>& xs, int nonzero, const Visit& visit) const {
        if (level == 0) {
            if (nonzero == 0) return;
            Rat two_phi = two_bound - rem;
            two_phi.canonicalize();
            if (two_phi.get_den() != 1)
                throw InvariantViolation("enumerate: non-integral form value");
            visit(xs, Int(two_phi.get_num()));
            return;
        }
        const std::size_t i = level - 1;
        Rat c(0);
        for (std::size_t j = i + 1; j < n_; ++j)
            if (xs[j] != 0) c += f_.l(j, i) * Rat(xs[j]);
        c.canonicalize();

        auto fits = [&](long x) {
            Rat t = Rat(x) + c;
            return f_.d[i] * t * t <= rem;
        };
        Rat ratio = rem / f_.d[i];
        double width = std::sqrt(std::max(0.0, mpq_get_d(ratio.get_mpq_t())));
        if (width > 1e12) throw Unsupported("enumerate: bound too large");
        double center = -mpq_get_d(c.get_mpq_t());
        long lo = static_cast<long>(std::floor(center - width)) - 1;
        long hi = static_cast<long>(std::ceil(center + width)) + 1;
        while (fits(hi + 1)) ++hi;
        while (hi >= lo && !fits(hi)) --hi;
        while (fits(lo - 1)) --lo;
        while (lo <= hi && !fits(lo)) ++lo;

        for (long x = lo; x <= hi; ++x) {
            Rat t = Rat(x) + c;
            Rat used = f_.d[i] * t * t;
            xs[i] = x;
            descend(i, rem - used, two_bound, xs, nonzero + (x != 0 ? 1 : 0), visit);
        }
        xs[i] = 0;
    }

    const linalg::LdlResult& f_;
    std::size_t n_;
};

Int character_disc_of(const Int& det, std::size_t rank) {
    switch (rank % 4) {
        case 0: return det;
        case 2: return -det;
        default: {
            if (det % 2 != 0)
                throw InvariantViolation("character_disc: odd determinant at odd rank");
            return det / 2;
        }
    }
}

}  // namespace

Int form_disc(const QuadraticForm& f) {
    Int det = linalg::det_bareiss(f.gram());
    const std::size_t r = f.rank();
    return (r * (r - 1) / 2) % 2 != 0 ? Int(-det) : det;
}

Int level(const QuadraticForm& f) {
    Int det = linalg::det_bareiss(f.gram());
    if (det == 0) throw SingularForm();
    Int d = abs(det);
    IntMatrix adj = linalg::adjugate(f.gram());
    Int n(1);
    for (std::size_t i = 0; i < f.rank(); ++i)
        for (std::size_t j = 0; j < f.rank(); ++j) {
            if (i == j)
                n = lcm(n, 2 * d / gcd(2 * d, adj(i, i)));
            else if (adj(i, j) != 0)
                n = lcm(n, d / gcd(d, adj(i, j)));
        }
    return n;
}

bool is_positive_definite(const QuadraticForm& f) {
    try {
        linalg::ldl(f.gram());
        return true;
    } catch (const NotPositiveDefinite&) {
        return false;
    }
}

std::vector<Int> representation_counts(const QuadraticForm& f, long bound, const Rat& delta) {
    if (bound < 0) bound = 0;
    std::vector<Int> counts(static_cast<std::size_t>(bound) + 1);
    if (f.rank() == 0) return counts;
    linalg::LllResult red = linalg::lll_gram(f.gram(), delta);
    linalg::LdlResult fac = linalg::ldl(red.gram);
    Enumerator(fac).run(Int(2 * bound), [&](const std::vector<Int>&, const Int& two_phi) {
        if (two_phi % 2 != 0) throw InvariantViolation("representation_counts: odd 2*Phi");
        Int t = two_phi / 2;
        if (t >= 1 && t <= bound) ++counts[t.get_ui()];
    });
    return counts;
}

ThetaSeries theta_series(const QuadraticForm& f, long bound, const Rat& delta) {
    if (bound < 0) throw Unsupported("theta_series: negative precision");
    ThetaSeries theta;
    theta.precision = bound;
    theta.coeffs = representation_counts(f, bound, delta);
    theta.coeffs[0] = 1;
    return theta;
}

Int minimum(const QuadraticForm& f, const Rat& delta) {
    if (f.rank() == 0) throw UnsupportedRank("minimum: rank-0 form represents nothing");
    linalg::LllResult red = linalg::lll_gram(f.gram(), delta);
    linalg::LdlResult fac = linalg::ldl(red.gram);
    Int bound = red.gram(0, 0);
    for (std::size_t i = 1; i < f.rank(); ++i)
        if (red.gram(i, i) < bound) bound = red.gram(i, i);
    // bound = 2 * Phi(shortest unit vector); one pass normally suffices
    for (;; bound *= 2) {
        Int best(-1);
        Enumerator(fac).run(bound, [&](const std::vector<Int>&, const Int& two_phi) {
            if (two_phi > 0 && (best < 0 || two_phi < best)) best = two_phi;
        });
        if (best > 0) {
            if (best % 2 != 0) throw InvariantViolation("minimum: odd 2*Phi");
            return best / 2;
        }
    }
}

std::optional<Int> smallest_represented_prime(const ThetaSeries& theta) {
    for (long t = 2; t <= theta.precision; ++t)
        if (theta.coeff(t) > 0 && is_prime(Int(t))) return Int(t);
    return std::nullopt;
}

namespace {

// all x with x^T G x exactly equal to target, both signs, in the basis of fac
std::vector<std::vector<Int>> vectors_of_norm(const linalg::LdlResult& fac, const Int& target) {
    std::vector<std::vector<Int>> out;
    Enumerator(fac).run(target, [&](const std::vector<Int>& x, const Int& two_phi) {
        if (two_phi == target) out.push_back(x);
    });
    return out;
}

Int pairing(const IntMatrix& g, const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * g(i, j) * b[j];
    }
    return s;
}

}  // namespace

std::optional<IntMatrix> isometry(const QuadraticForm& f1, const QuadraticForm& f2) {
    const std::size_t r = f1.rank();
    if (f2.rank() != r) return std::nullopt;
    if (r > 4) throw UnsupportedRank("isometry: complete search is limited to rank <= 4");
    if (r == 0) return IntMatrix(0, 0);
    if (linalg::det_bareiss(f1.gram()) != linalg::det_bareiss(f2.gram())) return std::nullopt;

    linalg::LllResult red1 = linalg::lll_gram(f1.gram());
    linalg::LllResult red2 = linalg::lll_gram(f2.gram());
    linalg::LdlResult fac1 = linalg::ldl(red1.gram);

    // candidate images of the k-th reduced basis vector of f2: vectors of
    // matching norm in the reduced f1 lattice
    std::vector<std::vector<std::vector<Int>>> candidates(r);
    for (std::size_t k = 0; k < r; ++k) {
        candidates[k] = vectors_of_norm(fac1, red2.gram(k, k));
        if (candidates[k].empty()) return std::nullopt;
    }

    std::vector<std::vector<Int>> chosen(r);
    std::function<bool(std::size_t)> dfs = [&](std::size_t k) -> bool {
        if (k == r) return true;
        for (const auto& v : candidates[k]) {
            bool ok = true;
            for (std::size_t i = 0; i < k; ++i) {
                if (pairing(red1.gram, chosen[i], v) != red2.gram(i, k)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen[k] = v;
            if (dfs(k + 1)) return true;
        }
        return false;
    };
    if (!dfs(0)) return std::nullopt;

    IntMatrix v(r, r);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < r; ++i) v(i, k) = chosen[k][i];
    IntMatrix u = red1.u * v * linalg::unimodular_inverse(red2.u);
    if (u.transpose() * f1.gram() * u != f2.gram())
        throw InvariantViolation("isometry: candidate failed final verification");
    return u;
}

FormInvariants form_invariants(const QuadraticForm& f) {
    FormInvariants inv;
    inv.det = linalg::det_bareiss(f.gram());
    inv.disc = form_disc(f);
    inv.level = level(f);
    inv.minimum = minimum(f);
    inv.character_disc = character_disc_of(inv.det, f.rank());
    return inv;
}

}  // namespace thetanf

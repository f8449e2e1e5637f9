#pragma once

#include <optional>
#include <vector>

#include "thetanf/linalg.hpp"
#include "thetanf/matrix.hpp"

namespace thetanf {

/// Integral quadratic form Phi(x) = (1/2) x^T G x for an even symmetric
/// Gram matrix G (integer entries, even diagonal).
class QuadraticForm {
public:
    explicit QuadraticForm(IntMatrix gram);

    const IntMatrix& gram() const { return gram_; }
    std::size_t rank() const { return gram_.rows(); }

    /// Phi(x), exact.
    Int value(const std::vector<Int>& x) const;

private:
    IntMatrix gram_;
};

/// theta series of a form: coeffs[t] = #{x : Phi(x) = t} for t <= precision,
/// with coeffs[0] = 1.
struct ThetaSeries {
    long precision = 0;
    std::vector<Int> coeffs;

    const Int& coeff(long t) const { return coeffs[static_cast<std::size_t>(t)]; }
};

struct FormInvariants {
    Int det;
    Int disc;            // (-1)^{r(r-1)/2} det
    Int level;
    Int minimum;         // least t >= 1 represented
    Int character_disc;  // d_Phi: det, -det or det/2 by rank mod 4
};

/// (-1)^{r(r-1)/2} det(G).
Int form_disc(const QuadraticForm& f);

/// Least N >= 1 such that N G^{-1} is an even integer matrix.
/// Throws SingularForm when det G = 0.
Int level(const QuadraticForm& f);

/// True iff all exact LDL pivots are positive (rank 0 counts as definite).
bool is_positive_definite(const QuadraticForm& f);

/// Representation numbers c_t = #{x in Z^r : Phi(x) = t} for 1 <= t <= bound,
/// exact Fincke-Pohst traversal after LLL preconditioning.
std::vector<Int> representation_counts(const QuadraticForm& f, long bound,
                                        const Rat& delta = Rat(3, 4));

/// c_0 = 1 plus representation_counts; a rank-0 form yields the constant 1.
ThetaSeries theta_series(const QuadraticForm& f, long bound, const Rat& delta = Rat(3, 4));

/// Least t >= 1 with c_t > 0; enumeration bound starts at the least reduced
/// diagonal and doubles until a vector appears.
Int minimum(const QuadraticForm& f, const Rat& delta = Rat(3, 4));

/// Least prime t <= precision with c_t > 0.
std::optional<Int> smallest_represented_prime(const ThetaSeries& theta);

/// Complete isometry search for positive definite forms of equal rank <= 4:
/// returns U with U^T G1 U = G2 (verified), or nullopt when none exists.
/// Throws UnsupportedRank above rank 4.
std::optional<IntMatrix> isometry(const QuadraticForm& f1, const QuadraticForm& f2);

/// All invariants of a positive definite form in one bundle.
FormInvariants form_invariants(const QuadraticForm& f);

}  // namespace thetanf

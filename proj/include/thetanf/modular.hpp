#pragma once

#include <string>

#include "thetanf/numeric.hpp"

namespace thetanf {

/// Quadratic residue symbol (a/b) for arbitrary integers a, b, the completely
/// multiplicative extension of the Legendre symbol fixed by:
///   (a/2) = 0 for even a, else (-1)^((a^2-1)/8);
///   (a/-1) = 1 for a >= 0, -1 for a < 0;
///   (a/0) = 1 iff a = 1, else 0;
///   (a/bc) = (a/b)(a/c).
int kronecker(const Int& a, const Int& b);

/// D_d: the squarefree part d_f of d, or 4 d_f when d_f = 2, 3 mod 4.
/// For non-square d this is the discriminant of Q(sqrt(d)).
Int fundamental_D(const Int& d);

/// chi_d(n) = (D_d / n).
int chi(const Int& d, const Int& n);

/// The quadratic character attached to d.
struct CharacterSpec {
    Int D;          // defining integer, D = 0 or 1 mod 4
    Int conductor;  // |D|
};

CharacterSpec character_spec(const Int& d);

/// Modular-form data of the degree-n theta series at field discriminant d:
/// weight (n-1)/2, level 2nd, character determined by delta_n * n * d.
struct ThetaMetadata {
    long degree = 0;
    Int field_disc;
    Rat weight;
    Int level;
    Int character_disc;
};

ThetaMetadata theta_metadata(long n, const Int& d);

/// #{x mod N : x^2 + 1 = 0 mod N} for squarefree N, multiplicatively:
/// 1 at p = 2, 2 at p = 1 mod 4, 0 at p = 3 mod 4.
Int count_solutions_x2_plus_1(const Int& n);

/// lambda(r, s, p) of the dimension formula's correction term.
Int lambda_p(long r, long s, const Int& p);

enum class DimBoundMode { paper, exact_terms };

inline const char* to_string(DimBoundMode m) {
    return m == DimBoundMode::paper ? "paper" : "exact_terms";
}

/// Lower bound for dim S_2^new(Gamma_0(2d), chi) - 1 at odd squarefree d > 1.
struct DimBound {
    Int d;
    Int N;               // 2d
    Rat main_term;       // (N/12) prod_{p|N} (1 + 1/p)
    Int lambda_product;  // prod_{p|N} lambda(1,1,p) = 2^omega(N)
    Int sol_count;       // #{x^2 + 1 = 0 mod N}
    Rat lower_bound;
    DimBoundMode mode = DimBoundMode::paper;
    bool heuristic = false;  // exact_terms mode carries unspecified constants
};

DimBound dim_lower_bound(const Int& d, DimBoundMode mode = DimBoundMode::paper);

}  // namespace thetanf

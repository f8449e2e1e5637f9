#pragma once

#include <vector>

#include <gmpxx.h>

namespace thetanf {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Floor of an exact rational.
inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Nearest integer, ties toward +infinity (floor(q + 1/2)).
inline Int rat_round(const Rat& q) {
    return rat_floor(q + Rat(1, 2));
}

/// Floor of sqrt(n) for n >= 0.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

struct PrimePower {
    Int p;
    int e;
};

/// Complete factorization of |n| (n != 0), primes ascending.
/// Trial division plus primality/perfect-square finishing; throws Unsupported
/// if a composite cofactor beyond the trial bound cannot be resolved.
std::vector<PrimePower> factorize(const Int& n);

bool is_squarefree(const Int& n);

/// Squarefree part d_f of d = d_f * d_s^2, carrying the sign of d.
Int squarefree_part(const Int& d);

/// True for discriminants of quadratic fields: d squarefree with d = 1 mod 4,
/// or d = 4k with k squarefree and k = 2, 3 mod 4.
bool is_fundamental_disc(const Int& d);

}  // namespace thetanf

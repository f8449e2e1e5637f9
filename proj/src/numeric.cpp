#include "thetanf/numeric.hpp"

#include "thetanf/errors.hpp"

namespace thetanf {

namespace {
constexpr unsigned long kTrialBound = 1000000;
}

std::vector<PrimePower> factorize(const Int& n) {
    if (n == 0) throw Unsupported("factorize: zero input");
    Int m = abs(n);
    std::vector<PrimePower> out;
    auto push = [&out](Int p, int e) { out.push_back({std::move(p), e}); };

    for (unsigned long p = 2; p <= kTrialBound && m > 1; p = (p == 2 ? 3 : p + 2)) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            int e = 0;
            do {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
            push(Int(p), e);
        }
        // all remaining factors exceed p, so a composite remainder is > p^2
        if (Int(p) * Int(p) > m) break;
    }
    if (m > 1) {
        if (Int(kTrialBound) * kTrialBound > m || is_prime(m)) {
            push(m, 1);
        } else if (is_perfect_square(m)) {
            Int r = isqrt(m);
            if (!is_prime(r)) throw Unsupported("factorize: unresolved square cofactor");
            push(r, 2);
        } else {
            // remaining cofactor is a product of >= 2 distinct primes above the
            // trial bound; a hidden square would force it past ~10^18
            if (m > Int(kTrialBound) * kTrialBound * kTrialBound)
                throw Unsupported("factorize: composite cofactor too large to resolve");
            // distinct-prime semiprime: cannot split without heavier machinery
            throw Unsupported("factorize: semiprime cofactor beyond trial bound");
        }
    }
    return out;
}

bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    for (const auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

Int squarefree_part(const Int& d) {
    Int f = d < 0 ? Int(-1) : Int(1);
    for (const auto& [p, e] : factorize(d))
        if (e % 2 != 0) f *= p;
    return f;
}

bool is_fundamental_disc(const Int& d) {
    if (d == 0) return false;
    Int r4 = d;
    mpz_fdiv_r_ui(r4.get_mpz_t(), r4.get_mpz_t(), 4);
    if (r4 == 1) return is_squarefree(d);
    if (r4 != 0) return false;
    Int k = d / 4;
    Int k4 = k;
    mpz_fdiv_r_ui(k4.get_mpz_t(), k4.get_mpz_t(), 4);
    return (k4 == 2 || k4 == 3) && is_squarefree(k);
}

}  // namespace thetanf

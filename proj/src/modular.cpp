#include "thetanf/modular.hpp"

#include "thetanf/errors.hpp"

namespace thetanf {

namespace {

// (a/2) per the defining property list
int symbol_mod_2(const Int& a) {
    if (mpz_even_p(a.get_mpz_t())) return 0;
    // (-1)^((a^2-1)/8): +1 for a = 1, 7 mod 8, -1 for a = 3, 5 mod 8
    unsigned long r = mpz_fdiv_ui(a.get_mpz_t(), 8);
    return (r == 1 || r == 7) ? 1 : -1;
}

// Jacobi symbol (a/b) for odd b > 0, by quadratic reciprocity.
int jacobi_odd(Int a, Int b) {
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    int sign = 1;
    while (a != 0) {
        while (mpz_even_p(a.get_mpz_t())) {
            a /= 2;
            unsigned long r = mpz_fdiv_ui(b.get_mpz_t(), 8);
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(a, b);
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(b.get_mpz_t(), 4) == 3)
            sign = -sign;
        mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    return b == 1 ? sign : 0;
}

}  // namespace

int kronecker(const Int& a, const Int& b) {
    if (b == 0) return a == 1 ? 1 : 0;
    int sign = 1;
    Int bb = b;
    if (bb < 0) {
        // (a/-1) factor
        if (a < 0) sign = -sign;
        bb = -bb;
    }
    if (bb == 1) return sign;
    // split the power of two
    long two_exp = 0;
    while (mpz_even_p(bb.get_mpz_t())) {
        bb /= 2;
        ++two_exp;
    }
    if (two_exp > 0) {
        int s2 = symbol_mod_2(a);
        if (s2 == 0) return 0;
        if (two_exp % 2 != 0 && s2 == -1) sign = -sign;
    }
    if (bb == 1) return sign;
    int sj = jacobi_odd(a, bb);
    return sj == 0 ? 0 : sign * sj;
}

Int fundamental_D(const Int& d) {
    if (d == 0) throw Unsupported("fundamental_D: d must be nonzero");
    Int f = squarefree_part(d);
    unsigned long r = mpz_fdiv_ui(f.get_mpz_t(), 4);
    return r == 1 ? f : 4 * f;
}

int chi(const Int& d, const Int& n) {
    return kronecker(fundamental_D(d), n);
}

CharacterSpec character_spec(const Int& d) {
    Int D = fundamental_D(d);
    return {D, abs(D)};
}

ThetaMetadata theta_metadata(long n, const Int& d) {
    if (n < 2 || n > 7) throw Unsupported("theta_metadata: degree outside [2, 7]");
    if (d <= 0) throw Unsupported("theta_metadata: discriminant must be positive");
    ThetaMetadata md;
    md.degree = n;
    md.field_disc = d;
    md.weight = Rat(n - 1, 2);
    md.weight.canonicalize();
    md.level = 2 * n * d;
    if (n % 2 != 0) {
        // delta_n = (-1)^((n-1)/2)
        md.character_disc = ((n - 1) / 2) % 2 != 0 ? Int(-n * d) : Int(n * d);
    } else {
        // delta_n = 1/2; n even makes n d / 2 integral
        md.character_disc = n * d / 2;
    }
    return md;
}

Int count_solutions_x2_plus_1(const Int& n) {
    if (n < 1) throw Unsupported("count_solutions: modulus must be positive");
    if (n == 1) return 1;  // the empty congruence has the single class x = 0
    Int count(1);
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) throw Unsupported("count_solutions: modulus must be squarefree");
        if (p == 2) continue;  // one solution mod 2
        unsigned long r = mpz_fdiv_ui(p.get_mpz_t(), 4);
        if (r == 1)
            count *= 2;
        else
            return Int(0);
    }
    return count;
}

Int lambda_p(long r, long s, const Int& p) {
    if (r < 1 || s < 0 || s > r) throw Unsupported("lambda_p: need 1 <= r and 0 <= s <= r");
    Int pw;
    if (2 * s <= r) {
        long rp = r / 2;
        mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(rp));
        if (r % 2 == 0) {
            Int pw1;
            mpz_pow_ui(pw1.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(rp - 1));
            return pw + pw1;
        }
        return 2 * pw;
    }
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(r - s));
    return 2 * pw;
}

DimBound dim_lower_bound(const Int& d, DimBoundMode mode) {
    if (d <= 1 || mpz_even_p(d.get_mpz_t()) || !is_squarefree(d))
        throw Unsupported("dim_lower_bound: d must be odd, squarefree and > 1");
    DimBound b;
    b.d = d;
    b.N = 2 * d;
    b.mode = mode;
    b.main_term = Rat(b.N, 12);
    b.main_term.canonicalize();
    b.lambda_product = 1;
    for (const auto& [p, e] : factorize(b.N)) {
        (void)e;
        b.main_term *= Rat(p + 1, p);
        b.lambda_product *= lambda_p(1, 1, p);
    }
    b.main_term.canonicalize();
    b.sol_count = count_solutions_x2_plus_1(b.N);
    if (mode == DimBoundMode::paper) {
        // both correction sums bounded by sqrt(2d), dim M_0^new = 1
        Int root = isqrt(b.N);
        if (root * root < b.N) root += 1;
        b.lower_bound = b.main_term - Rat(2 * root) - 1;
    } else {
        b.lower_bound = b.main_term - Rat(b.lambda_product, 2) - Rat(b.sol_count) - 1;
        b.heuristic = true;  // epsilon_k at k = 2 is not pinned down
    }
    b.lower_bound.canonicalize();
    return b;
}

}  // namespace thetanf

#include "thetanf/numfield.hpp"

#include <algorithm>
#include <utility>

#include "thetanf/errors.hpp"
#include "thetanf/linalg.hpp"

namespace thetanf {

namespace {

// --- rational-coefficient polynomials, used only for Sturm sequences ---

using QPoly = std::vector<Rat>;  // constant term first, no trailing zeros

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qfrom(const Polynomial& f) {
    QPoly p(f.coeffs().begin(), f.coeffs().end());
    return p;
}

// remainder of a by b, b nonzero
QPoly qrem(QPoly a, const QPoly& b) {
    while (a.size() >= b.size()) {
        Rat q = a.back() / b.back();
        q.canonicalize();
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[off + i] -= q * b[i];
            a[off + i].canonicalize();
        }
        a.pop_back();
        qtrim(a);
        if (a.empty()) break;
    }
    return a;
}

int sign_at_plus_inf(const QPoly& p) {
    return sgn(p.back());
}

int sign_at_minus_inf(const QPoly& p) {
    int s = sgn(p.back());
    return (p.size() - 1) % 2 == 0 ? s : -s;
}

long sign_changes(const std::vector<int>& signs) {
    long count = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

// --- F_p[x] arithmetic, used only by Dedekind's criterion ---

struct FpCtx {
    Int p;
    Int reduce(const Int& a) const {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    Int inv(const Int& a) const {
        Int r;
        if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
            throw InvariantViolation("FpCtx: non-invertible element");
        return r;
    }
};

using FpPoly = std::vector<Int>;  // constant first, entries in [0, p)

void fptrim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fpfrom(const Polynomial& f, const FpCtx& ctx) {
    FpPoly out(f.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx.reduce(f.coeff(i));
    fptrim(out);
    return out;
}

FpPoly fpmul(const FpPoly& a, const FpPoly& b, const FpCtx& ctx) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    for (auto& e : c) e = ctx.reduce(e);
    fptrim(c);
    return c;
}

FpPoly fpmonic(FpPoly f, const FpCtx& ctx) {
    if (f.empty()) return f;
    Int s = ctx.inv(f.back());
    for (auto& e : f) e = ctx.reduce(e * s);
    return f;
}

// divides a by monic b; returns {quotient, remainder}
std::pair<FpPoly, FpPoly> fpdivmod(FpPoly a, const FpPoly& b, const FpCtx& ctx) {
    FpPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    while (a.size() >= b.size() && !a.empty()) {
        Int c = a.back();
        std::size_t off = a.size() - b.size();
        q[off] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = ctx.reduce(a[off + i] - c * b[i]);
        fptrim(a);
        if (a.size() < b.size()) break;
    }
    fptrim(q);
    return {std::move(q), std::move(a)};
}

FpPoly fpgcd(FpPoly a, FpPoly b, const FpCtx& ctx) {
    fptrim(a);
    fptrim(b);
    while (!b.empty()) {
        FpPoly r = fpdivmod(a, fpmonic(b, ctx), ctx).second;
        a = std::move(b);
        b = std::move(r);
    }
    return fpmonic(a, ctx);
}

FpPoly fpderiv(const FpPoly& f, const FpCtx& ctx) {
    if (f.size() <= 1) return {};
    FpPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = ctx.reduce(Int(static_cast<long>(i)) * f[i]);
    fptrim(d);
    return d;
}

// radical of a monic polynomial in F_p[x] (product of its distinct
// irreducible factors). Handles the characteristic-p p-th power cases.
FpPoly fp_radical(FpPoly f, const FpCtx& ctx) {
    fptrim(f);
    if (f.size() <= 1) return {Int(1)};
    FpPoly fd = fpderiv(f, ctx);
    if (fd.empty()) {
        // f = g(x^p); in F_p[x] this means f = g_0(x)^p with g_0[i] = f[i*p]
        unsigned long pl = ctx.p.get_ui();
        FpPoly g((f.size() - 1) / pl + 1);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = f[i * pl];
        return fp_radical(std::move(g), ctx);
    }
    FpPoly d = fpgcd(f, fd, ctx);
    if (d.size() <= 1) return fpmonic(std::move(f), ctx);
    FpPoly w = fpdivmod(std::move(f), d, ctx).first;  // factors with multiplicity not divisible by p
    w = fpmonic(std::move(w), ctx);
    // strip w's factors out of d; what remains is a perfect p-th power
    FpPoly v = std::move(d);
    while (true) {
        FpPoly g = fpgcd(v, w, ctx);
        if (g.size() <= 1) break;
        v = fpdivmod(std::move(v), g, ctx).first;
    }
    v = fpmonic(std::move(v), ctx);
    if (v.size() <= 1) return w;
    return fpmul(w, fp_radical(std::move(v), ctx), ctx);
}

Polynomial lift(const FpPoly& f) {
    return Polynomial(std::vector<Int>(f.begin(), f.end()));
}

// trace Gram for an explicit basis matrix over the field of f
IntMatrix trace_gram_of(const Polynomial& f, const RatMatrix& basis) {
    const std::size_t n = static_cast<std::size_t>(f.degree());
    std::vector<Int> p = power_traces(f, static_cast<long>(2 * n - 2));
    RatMatrix pt(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) pt(i, j) = p[i + j];
    RatMatrix g = basis * pt * basis.transpose();
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat e = g(i, j);
            e.canonicalize();
            if (e.get_den() != 1)
                throw NotAnOrder("trace_gram: entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") is not integral");
            out(i, j) = e.get_num();
        }
    return out;
}

std::vector<Int> basis_traces(const Polynomial& f, const RatMatrix& basis) {
    const std::size_t n = static_cast<std::size_t>(f.degree());
    std::vector<Int> p = power_traces(f, static_cast<long>(n - 1));
    std::vector<Int> tv(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rat s(0);
        for (std::size_t j = 0; j < n; ++j) s += basis(i, j) * Rat(p[j]);
        s.canonicalize();
        if (s.get_den() != 1) throw NotAnOrder("basis element has non-integral trace");
        tv[i] = s.get_num();
    }
    return tv;
}

}  // namespace

Int disc_poly(const Polynomial& f) {
    if (!f.is_monic() || f.degree() < 1) throw Unsupported("disc_poly: polynomial must be monic");
    if (!is_squarefree_over_q(f)) throw NotSeparable();
    const long n = f.degree();
    Int res = resultant(f, f.derivative());
    return (n * (n - 1) / 2) % 2 != 0 ? Int(-res) : res;
}

long count_real_roots(const Polynomial& f) {
    if (f.degree() < 1) return 0;
    if (!is_squarefree_over_q(f)) throw NotSeparable();
    QPoly p0 = qfrom(f);
    QPoly p1 = qfrom(f.derivative());
    std::vector<QPoly> seq{p0, p1};
    while (!seq.back().empty() && seq.back().size() > 1) {
        QPoly r = qrem(seq[seq.size() - 2], seq.back());
        if (r.empty()) break;
        for (auto& e : r) {
            e = -e;
            e.canonicalize();
        }
        seq.push_back(std::move(r));
    }
    std::vector<int> lo, hi;
    for (const auto& p : seq) {
        if (p.empty()) continue;
        lo.push_back(sign_at_minus_inf(p));
        hi.push_back(sign_at_plus_inf(p));
    }
    return sign_changes(lo) - sign_changes(hi);
}

std::vector<Int> power_traces(const Polynomial& f, long count) {
    if (!f.is_monic() || f.degree() < 1)
        throw Unsupported("power_traces: polynomial must be monic");
    const long n = f.degree();
    std::vector<Int> p(static_cast<std::size_t>(count) + 1);
    p[0] = n;
    for (long k = 1; k <= count; ++k) {
        // p_k + sum_{i=1}^{min(k-1,n)} a_{n-i} p_{k-i} + [k <= n] k a_{n-k} = 0,
        // where the i = k term of Newton's identity is the k a_{n-k} summand
        Int s(0);
        for (long i = 1; i < k && i <= n; ++i) s += f.coeff(static_cast<std::size_t>(n - i)) * p[k - i];
        if (k <= n)
            p[k] = -s - Int(k) * f.coeff(static_cast<std::size_t>(n - k));
        else
            p[k] = -s;
    }
    return p;
}

IntMatrix trace_gram(const OrderBasis& order) {
    return trace_gram_of(order.field.poly, order.basis_matrix);
}

bool dedekind_is_p_maximal(const Polynomial& f, const Int& p) {
    FpCtx ctx{p};
    FpPoly fbar = fpfrom(f, ctx);
    FpPoly g = fp_radical(fbar, ctx);
    FpPoly h = fpdivmod(fbar, g, ctx).first;
    // T = (lift(g) lift(h) - f) / p, then test gcd(T mod p, g, h) = 1
    Polynomial prod = lift(g) * lift(h);
    Polynomial diff = prod - f;
    std::vector<Int> tc(diff.coeffs().size());
    for (std::size_t i = 0; i < tc.size(); ++i) {
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), diff.coeff(i).get_mpz_t(), p.get_mpz_t());
        if (r != 0) throw InvariantViolation("dedekind: lift product not congruent to f mod p");
        tc[i] = q;
    }
    FpPoly tbar = fpfrom(Polynomial(std::move(tc)), ctx);
    FpPoly u = fpgcd(fpgcd(tbar, g, ctx), h, ctx);
    return u.size() <= 1;
}

OrderBasis make_order(const FieldRecord& rec) {
    const Polynomial& f = rec.poly;
    if (!f.is_monic()) throw NonMonic("make_order: defining polynomial must be monic");
    const long n = f.degree();
    if (n < kMinDegree || n > kMaxDegree)
        throw DegreeOutOfRange("make_order: degree " + std::to_string(n) + " outside [" +
                               std::to_string(kMinDegree) + ", " + std::to_string(kMaxDegree) + "]");
    if (!is_squarefree_over_q(f)) throw NotSeparable();

    OrderBasis order;
    order.field = rec;
    if (rec.basis) {
        const RatMatrix& b = *rec.basis;
        if (b.rows() != static_cast<std::size_t>(n) || b.cols() != static_cast<std::size_t>(n))
            throw DimensionError("make_order: basis must be n x n");
        IntMatrix t = trace_gram_of(f, b);
        Int disc = linalg::det_bareiss(t);
        if (disc == 0) throw NotAnOrder("make_order: basis is singular");
        order.basis_matrix = b;
        order.disc = disc;
    } else {
        Int dpoly = disc_poly(f);
        for (const auto& [p, e] : factorize(dpoly)) {
            if (e < 2) continue;
            if (!dedekind_is_p_maximal(f, p)) throw NotMaximal(p);
        }
        order.basis_matrix = RatMatrix::identity(static_cast<std::size_t>(n));
        order.disc = dpoly;
    }
    order.trace_vector = basis_traces(f, order.basis_matrix);
    if (rec.claimed_disc && *rec.claimed_disc != order.disc)
        throw DiscMismatch("make_order: claimed disc " + rec.claimed_disc->get_str() +
                           " but computed " + order.disc.get_str());
    return order;
}

TraceZeroLattice trace_zero_lattice(const OrderBasis& order) {
    const Polynomial& f = order.field.poly;
    const long n = f.degree();
    if (count_real_roots(f) != n)
        throw NotTotallyReal("trace_zero_lattice: field is not totally real");

    TraceZeroLattice lat;
    lat.order = order;

    Int m(0);
    for (const Int& t : order.trace_vector) m = gcd(m, t);
    lat.m = m;

    IntMatrix tv(1, static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) tv(0, static_cast<std::size_t>(j)) = order.trace_vector[static_cast<std::size_t>(j)];
    lat.basis = linalg::kernel_saturated(tv);
    if (lat.basis.rows() != static_cast<std::size_t>(n - 1))
        throw InvariantViolation("trace_zero_lattice: kernel rank is not n - 1");

    IntMatrix t = trace_gram(order);
    lat.gram = lat.basis * t * lat.basis.transpose();

    for (std::size_t i = 0; i < lat.gram.rows(); ++i)
        if (lat.gram(i, i) % 2 != 0)
            throw InvariantViolation("trace_zero_lattice: odd diagonal entry in Gram matrix");

    // determinant identity |det gram| = n d / m^2, proven upstream; failure
    // here means a bug, never bad input
    Int det = linalg::det_bareiss(lat.gram);
    Int nd = Int(n) * order.disc;
    if (nd % (m * m) != 0)
        throw InvariantViolation("trace_zero_lattice: m^2 does not divide n d");
    Int expected = nd / (m * m);
    if (abs(det) != abs(expected))
        throw InvariantViolation("trace_zero_lattice: determinant identity failed: |" +
                                 det.get_str() + "| != |" + expected.get_str() + "|");
    return lat;
}

}  // namespace thetanf

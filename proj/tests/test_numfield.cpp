#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "thetanf/errors.hpp"
#include "thetanf/linalg.hpp"
#include "thetanf/numfield.hpp"
#include "thetanf/qform.hpp"

using namespace thetanf;

namespace {

Polynomial poly(std::initializer_list<long> coeffs) {
    std::vector<Int> c;
    for (long v : coeffs) c.emplace_back(v);
    return Polynomial(std::move(c));
}

FieldRecord record_of(Polynomial f) {
    FieldRecord rec;
    rec.poly = std::move(f);
    return rec;
}

}  // namespace

TEST_CASE("polynomial arithmetic basics") {
    Polynomial f = poly({-1, -1, 1});  // x^2 - x - 1
    CHECK(f.degree() == 2);
    CHECK(f.is_monic());
    CHECK(f.to_string() == "x^2 - x - 1");
    CHECK(f.evaluate(Int(2)) == 1);
    CHECK(f.derivative() == poly({-1, 2}));
    // Taylor shift: f(x + 1) = x^2 + x - 1
    CHECK(f.shift(Int(1)) == poly({-1, 1, 1}));
    CHECK((f * f).degree() == 4);
}

TEST_CASE("disc_poly examples") {
    CHECK(disc_poly(poly({-1, -1, 1})) == 5);
    CHECK(disc_poly(poly({-5, 0, 1})) == 20);
    // depressed cubic oracle: disc = -4p^3 - 27q^2 for x^3 + px + q
    CHECK(disc_poly(poly({-1, -4, 0, 1})) == -4 * (-64) - 27);
    CHECK(disc_poly(poly({-1, -4, 0, 1})) == 229);
    CHECK(disc_poly(poly({16, 5, -9, -2, 1})) == 35537);
    CHECK_THROWS_AS(disc_poly(poly({1, 2, 1})), NotSeparable);  // (x+1)^2
}

TEST_CASE("disc_poly matches the depressed-cubic formula on random inputs") {
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<long> dist(-30, 30);
    for (int iter = 0; iter < 100; ++iter) {
        long p = dist(rng), q = dist(rng);
        Polynomial f = poly({q, p, 0, 1});
        Int expected = -4 * Int(p) * p * p - 27 * Int(q) * q;
        if (expected == 0) continue;  // not squarefree
        CHECK(disc_poly(f) == expected);
    }
}

TEST_CASE("count_real_roots") {
    CHECK(count_real_roots(poly({1, 0, 1})) == 0);   // x^2 + 1
    CHECK(count_real_roots(poly({-5, 0, 1})) == 2);  // x^2 - 5
    CHECK(count_real_roots(poly({16, 5, -9, -2, 1})) == 4);
    CHECK(count_real_roots(poly({-1, -4, 0, 1})) == 3);
    CHECK(count_real_roots(poly({1, 1, 0, 1})) == 1);  // x^3 + x + 1
    CHECK_THROWS_AS(count_real_roots(poly({1, 2, 1})), NotSeparable);
}

TEST_CASE("power_traces fixed examples") {
    auto p1 = power_traces(poly({-1, -1, 1}), 2);
    CHECK(p1 == std::vector<Int>{2, 1, 3});
    auto p2 = power_traces(poly({-5, 0, 1}), 2);
    CHECK(p2 == std::vector<Int>{2, 0, 10});
    auto p3 = power_traces(poly({-1, -4, 0, 1}), 3);
    CHECK(p3 == std::vector<Int>{3, 0, 8, 3});
}

namespace {

// trace of the k-th power of the companion matrix of f
Int companion_trace(const Polynomial& f, long k) {
    const std::size_t n = static_cast<std::size_t>(f.degree());
    IntMatrix c(n, n);
    for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
    for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -f.coeff(i);
    IntMatrix acc = IntMatrix::identity(n);
    for (long s = 0; s < k; ++s) acc = acc * c;
    Int tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += acc(i, i);
    return tr;
}

}  // namespace

TEST_CASE("power_traces matches companion-matrix powers") {
    std::mt19937_64 rng(888);
    std::uniform_int_distribution<long> dist(-6, 6);
    for (int iter = 0; iter < 40; ++iter) {
        long deg = 2 + static_cast<long>(rng() % 4);  // 2..5
        std::vector<Int> c;
        for (long i = 0; i < deg; ++i) c.emplace_back(dist(rng));
        c.emplace_back(1);
        Polynomial f(std::move(c));
        auto p = power_traces(f, 8);
        for (long k = 0; k <= 8; ++k)
            CHECK(p[static_cast<std::size_t>(k)] == companion_trace(f, k));
    }
}

TEST_CASE("trace_gram examples") {
    SUBCASE("power basis of x^2 - x - 1") {
        OrderBasis ord = make_order(record_of(poly({-1, -1, 1})));
        IntMatrix t = trace_gram(ord);
        CHECK(t == IntMatrix{{2, 1}, {1, 3}});
        CHECK(ord.disc == 5);
    }
    SUBCASE("maximal basis {1, (1+sqrt5)/2} of Q(sqrt 5)") {
        FieldRecord rec = record_of(poly({-5, 0, 1}));
        RatMatrix b(2, 2);
        b(0, 0) = 1;
        b(1, 0) = Rat(1, 2);
        b(1, 1) = Rat(1, 2);
        rec.basis = b;
        OrderBasis ord = make_order(rec);
        CHECK(trace_gram(ord) == IntMatrix{{2, 1}, {1, 3}});
        CHECK(ord.disc == 5);
    }
    SUBCASE("non-order basis is rejected") {
        FieldRecord rec = record_of(poly({-5, 0, 1}));
        RatMatrix b = RatMatrix::identity(2);
        b(1, 1) = Rat(1, 3);  // sqrt5 / 3 is not an algebraic integer
        rec.basis = b;
        CHECK_THROWS_AS(make_order(rec), NotAnOrder);
    }
}

TEST_CASE("dedekind_is_p_maximal") {
    CHECK_FALSE(dedekind_is_p_maximal(poly({-5, 0, 1}), Int(2)));
    CHECK(dedekind_is_p_maximal(poly({-1, -1, 1}), Int(2)));
    CHECK(dedekind_is_p_maximal(poly({-1, -4, 0, 1}), Int(229)));
    // x^3 - x^2 - 4x + 2 has disc 316 = 4 * 79 and is 2-maximal
    CHECK(dedekind_is_p_maximal(poly({2, -4, -1, 1}), Int(2)));
    // index-14 power order of the first disc-4024049 field: fails at 2 and 7
    CHECK_FALSE(dedekind_is_p_maximal(poly({20, 46, -37, -1, 1}), Int(2)));
    CHECK_FALSE(dedekind_is_p_maximal(poly({20, 46, -37, -1, 1}), Int(7)));
}

TEST_CASE("make_order") {
    SUBCASE("table-1 quartic, power order") {
        OrderBasis ord = make_order(record_of(poly({16, 5, -9, -2, 1})));
        CHECK(ord.disc == 35537);
        CHECK(ord.trace_vector == std::vector<Int>{4, 2, 22, 47});
    }
    SUBCASE("x^2 - 5 without basis is rejected at 2") {
        try {
            make_order(record_of(poly({-5, 0, 1})));
            FAIL("expected NotMaximal");
        } catch (const NotMaximal& e) {
            CHECK(e.p == 2);
        }
    }
    SUBCASE("claimed disc mismatch") {
        FieldRecord rec = record_of(poly({-1, -1, 1}));
        rec.claimed_disc = Int(7);
        CHECK_THROWS_AS(make_order(rec), DiscMismatch);
    }
    SUBCASE("claimed disc accepted") {
        FieldRecord rec = record_of(poly({-1, -1, 1}));
        rec.claimed_disc = Int(5);
        CHECK(make_order(rec).disc == 5);
    }
    SUBCASE("degree out of range") {
        CHECK_THROWS_AS(make_order(record_of(poly({1, 1}))), DegreeOutOfRange);
    }
}

TEST_CASE("trace_zero_lattice fixed examples") {
    SUBCASE("Q(sqrt 5), maximal basis") {
        FieldRecord rec = record_of(poly({-5, 0, 1}));
        RatMatrix b(2, 2);
        b(0, 0) = 1;
        b(1, 0) = Rat(1, 2);
        b(1, 1) = Rat(1, 2);
        rec.basis = b;
        TraceZeroLattice lat = trace_zero_lattice(make_order(rec));
        CHECK(lat.m == 1);
        CHECK(lat.gram == IntMatrix{{10}});
    }
    SUBCASE("Q(sqrt 3), power basis; exercises m = 2") {
        TraceZeroLattice lat = trace_zero_lattice(make_order(record_of(poly({-3, 0, 1}))));
        CHECK(lat.m == 2);
        CHECK(lat.gram == IntMatrix{{6}});
        CHECK(lat.order.disc == 12);
        // det = n d / m^2 = 2 * 12 / 4
        CHECK(linalg::det_bareiss(lat.gram) == 6);
    }
    SUBCASE("table-1 field 1") {
        TraceZeroLattice lat =
            trace_zero_lattice(make_order(record_of(poly({16, 5, -9, -2, 1}))));
        CHECK(lat.gram.rows() == 3);
        CHECK(abs(linalg::det_bareiss(lat.gram)) == 4 * 35537);
        for (std::size_t i = 0; i < 3; ++i) CHECK(lat.gram(i, i) % 2 == 0);
    }
    SUBCASE("not totally real is rejected") {
        CHECK_THROWS_AS(trace_zero_lattice(make_order(record_of(poly({1, -1, 0, 1})))),
                        NotTotallyReal);
    }
}

TEST_CASE("trace-zero basis rows have trace zero and the Lemma identity holds") {
    std::vector<Polynomial> fields = {
        poly({-1, -1, 1}),        poly({-3, -1, 1}),        poly({-4, -1, 1}),
        poly({-3, 0, 1}),         poly({-7, 0, 1}),         poly({-1, -4, 0, 1}),
        poly({3, -4, -1, 1}),     poly({2, -4, -1, 1}),     poly({16, 5, -9, -2, 1}),
        poly({4, -3, -8, -1, 1}), poly({4, 5, -5, -2, 1}),
    };
    for (const Polynomial& f : fields) {
        CAPTURE(f.to_string());
        OrderBasis ord = make_order(record_of(f));
        TraceZeroLattice lat = trace_zero_lattice(ord);
        const long n = f.degree();
        // each basis row is in the kernel of the trace
        for (std::size_t i = 0; i < lat.basis.rows(); ++i) {
            Int s(0);
            for (std::size_t j = 0; j < lat.basis.cols(); ++j)
                s += lat.basis(i, j) * ord.trace_vector[j];
            CHECK(s == 0);
        }
        Int det = linalg::det_bareiss(lat.gram);
        CHECK(det == Int(n) * ord.disc / (lat.m * lat.m));
        for (std::size_t i = 0; i < lat.gram.rows(); ++i) CHECK(lat.gram(i, i) % 2 == 0);
    }
}

TEST_CASE("Tschirnhaus shifts f(x - c) give identical theta series") {
    // isomorphic fields must yield equal theta series; checked to B = 200
    Polynomial f = poly({16, 5, -9, -2, 1});
    TraceZeroLattice base = trace_zero_lattice(make_order(record_of(f)));
    ThetaSeries t0 = theta_series(QuadraticForm(base.gram), 200);
    for (long c = -2; c <= 2; ++c) {
        if (c == 0) continue;
        TraceZeroLattice lat = trace_zero_lattice(make_order(record_of(f.shift(Int(-c)))));
        ThetaSeries t = theta_series(QuadraticForm(lat.gram), 200);
        CHECK(t.coeffs == t0.coeffs);
    }
}

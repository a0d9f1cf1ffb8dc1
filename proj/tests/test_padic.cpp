#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eisq/padic.hpp"

using namespace eisq;

// Independent construction of Psi via the Lucas-style trace recurrence, with
// no cyclotomic machinery shared with the library route.  For n = p^r and
// s_k = alpha^k + beta^k where alpha*beta = 1, alpha + beta = x + 2:
//
//   s_0 = 2,  s_1 = x + 2,  s_k = (x+2) s_{k-1} - s_{k-2},
//
// and the product of (x - (z + 1/z - 2)) over ALL nontrivial n-th roots of
// unity z equals (s_n - 2)/x.  Each inverse pair {z, 1/z} contributes the same
// linear factor twice, so that product is Psi^2.
static intpoly::Poly psi_squared_oracle(uint64_t p, unsigned r) {
    using namespace intpoly;
    uint64_t n = 1;
    for (unsigned i = 0; i < r; ++i) n *= p;
    Poly s_prev{2};        // s_0
    Poly s_cur{2, 1};      // s_1 = x + 2
    Poly xp2{2, 1};
    for (uint64_t k = 2; k <= n; ++k) {
        Poly nxt = sub(mul(xp2, s_cur), s_prev);
        s_prev = std::move(s_cur);
        s_cur = std::move(nxt);
    }
    Poly num = sub(s_cur, Poly{2});  // s_n - 2, constant term vanishes
    return divexact(num, Poly{0, 1});
}

static bool poly_eq(intpoly::Poly a, intpoly::Poly b) {
    intpoly::trim(a);
    intpoly::trim(b);
    return a == b;
}

TEST_CASE("Psi matches the trace-recurrence oracle over Z") {
    for (auto [p, r] : {std::pair<uint64_t, unsigned>{5, 1},
                        {7, 1},
                        {11, 1},
                        {5, 2},
                        {7, 2}}) {
        INFO("p=" << p << " r=" << r);
        intpoly::Poly psi = psi_poly_ints(p, r);
        CHECK(poly_eq(intpoly::mul(psi, psi), psi_squared_oracle(p, r)));
    }
}

TEST_CASE("Psi small cases frozen") {
    CHECK(psi_poly_ints(5, 1) == intpoly::Poly{5, 5, 1});
    CHECK(psi_poly_ints(7, 1) == intpoly::Poly{7, 14, 7, 1});
    CHECK(psi_poly_ints(11, 1) == intpoly::Poly{11, 55, 77, 44, 11, 1});

    ZmodRing R(5, 12);
    CHECK(psi_poly(R, 1).c == std::vector<uint64_t>{5, 5, 1});
}

TEST_CASE("Psi degree, monicity, constant-term valuation") {
    for (auto [p, r] : {std::pair<uint64_t, unsigned>{5, 1},
                        {7, 1},
                        {11, 1},
                        {5, 2},
                        {7, 2}}) {
        INFO("p=" << p << " r=" << r);
        ZmodRing R(p, 12);
        PadicPoly psi = psi_poly(R, r);
        uint64_t n = 1;
        for (unsigned i = 0; i < r; ++i) n *= p;
        CHECK(psi.c.size() == (n - 1) / 2 + 1);
        CHECK(psi.is_monic());
        CHECK(R.val(psi.constant_term()) == r);
        if (r == 1) CHECK(psi.is_eisenstein());
        if (r == 2) CHECK_FALSE(psi.is_eisenstein());  // v(Psi(0)) = 2
    }
}

TEST_CASE("ring arithmetic in Z/p^e") {
    for (auto [p, e] : {std::pair<uint64_t, unsigned>{5, 12}, {7, 12}, {5, 4}, {11, 6}}) {
        ZmodRing R(p, e);
        INFO("p=" << p << " e=" << e);

        std::mt19937_64 rng(42 + p + e);
        for (int t = 0; t < 200; ++t) {
            uint64_t a = rng() % R.m;
            if (!R.is_unit(a)) continue;
            CHECK(R.mul(a, R.inv(a)) == 1);
        }

        // valuation and exact division
        uint64_t u = 1 + p * (rng() % (R.ppow[e - 1]));  // a unit
        REQUIRE(R.is_unit(u));
        for (unsigned k = 0; k < e; ++k) {
            uint64_t x = R.mul(R.ppow[k], u);
            CHECK(R.val(x) == k);
            // quotient is only determined mod p^(e-k)
            uint64_t q = R.divexact(x, R.ppow[k]);
            CHECK(R.mul(q, R.ppow[k]) == x);
            CHECK(R.val(R.sub(q, u)) >= e - k);
        }
        CHECK(R.val(0) == e);

        // pow against an explicit product
        uint64_t b = 1 + rng() % (R.m - 1);
        uint64_t acc = 1;
        for (unsigned k = 0; k < 17; ++k) {
            CHECK(R.pow(b, k) == acc);
            acc = R.mul(acc, b);
        }
    }
}

TEST_CASE("Teichmuller lifts") {
    for (auto [p, e] : {std::pair<uint64_t, unsigned>{5, 12}, {7, 8}}) {
        ZmodRing R(p, e);
        for (uint64_t a = 1; a < p; ++a) {
            uint64_t w = R.teichmuller(a);
            CHECK(w % p == a);
            CHECK(R.pow(w, p - 1) == 1);
        }
        CHECK(R.teichmuller(0) == 0);
    }
}

TEST_CASE("polynomial evaluation and multiplication") {
    ZmodRing R(7, 6);
    PadicPoly f(R, {3, 0, 1});       // x^2 + 3
    PadicPoly g(R, {1, 2});          // 2x + 1
    PadicPoly h = f.mul(g);          // 2x^3 + x^2 + 6x + 3
    CHECK(h.c == std::vector<uint64_t>{3, 6, 1, 2});
    for (uint64_t x : {0ull, 1ull, 5ull, 100ull})
        CHECK(h.eval(x) == R.mul(f.eval(x), g.eval(x)));
}

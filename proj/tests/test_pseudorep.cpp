#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eisq/cohomology.hpp"
#include "eisq/pseudorep.hpp"

using namespace eisq;

namespace {

struct M2 {
    ZmodRing R;
    uint64_t a = 1, b = 0, c = 0, d = 1;

    M2 mul(const M2& o) const {
        return {R, R.add(R.mul(a, o.a), R.mul(b, o.c)), R.add(R.mul(a, o.b), R.mul(b, o.d)),
                R.add(R.mul(c, o.a), R.mul(d, o.c)), R.add(R.mul(c, o.b), R.mul(d, o.d))};
    }
    uint64_t tr() const { return R.add(a, d); }
    uint64_t det() const { return R.sub(R.mul(a, d), R.mul(b, c)); }
};

// rho(t^a s^m) for the dihedral group, conjugated by a random unit matrix:
// t acts as diag(z, 1/z) with z an m-th root of unity, s as the swap.
std::vector<M2> dihedral_rep(const FiniteGroupModel& G, const ZmodRing& R, uint64_t z,
                             std::mt19937_64& rng) {
    M2 Q{R, 0, 0, 0, 0};
    uint64_t qdet_inv = 0;
    do {
        Q.a = rng() % R.m;
        Q.b = rng() % R.m;
        Q.c = rng() % R.m;
        Q.d = rng() % R.m;
        if (R.is_unit(Q.det())) qdet_inv = R.inv(Q.det());
    } while (!qdet_inv);
    M2 Qi{R, R.mul(Q.d, qdet_inv), R.mul(R.neg(Q.b), qdet_inv), R.mul(R.neg(Q.c), qdet_inv),
          R.mul(Q.a, qdet_inv)};

    M2 T{R, z, 0, 0, R.inv(z)};
    M2 S{R, 0, 1, 1, 0};
    auto conj = [&](const M2& m) { return Q.mul(m).mul(Qi); };
    T = conj(T);
    S = conj(S);

    std::vector<M2> rho(G.n, M2{R, 1, 0, 0, 1});
    for (uint32_t g = 0; g < G.n; ++g) {
        M2 m{R, 1, 0, 0, 1};
        for (uint64_t i = 0; i < G.t_exp(g); ++i) m = m.mul(T);
        for (uint64_t i = 0; i < G.s_exp(g); ++i) m = m.mul(S);
        rho[g] = m;
    }
    return rho;
}

}  // namespace

TEST_CASE("trace/det of random true representations is a pseudorepresentation") {
    for (auto [p, e, m] : {std::tuple<uint64_t, unsigned, uint64_t>{5, 8, 4}, {7, 6, 6},
                           {13, 5, 4}}) {
        INFO("p=" << p << " e=" << e << " dihedral order " << 2 * m);
        ZmodRing R(p, e);
        auto G = FiniteGroupModel::dihedral(m);
        // z = m-th root of unity via the Teichmuller lift of a generator power
        uint64_t g0 = 2;
        while (R.pow(R.teichmuller(g0), (p - 1) / 2) == 1) ++g0;  // find a generator mod p
        uint64_t z = R.pow(R.teichmuller(g0), (p - 1) / m);
        REQUIRE(R.pow(z, m) == 1);
        REQUIRE(R.pow(z, m / 2) != 1);

        std::mt19937_64 rng(1000 * p + m);
        for (int trial = 0; trial < 3; ++trial) {
            auto rho = dihedral_rep(G, R, z, rng);
            // really a homomorphism
            for (uint32_t x = 0; x < G.n; ++x)
                for (uint32_t y = 0; y < G.n; ++y) {
                    M2 lhs = rho[x].mul(rho[y]);
                    M2 rhs = rho[G.mul(x, y)];
                    REQUIRE(lhs.a == rhs.a);
                    REQUIRE(lhs.b == rhs.b);
                    REQUIRE(lhs.c == rhs.c);
                    REQUIRE(lhs.d == rhs.d);
                }

            TraceDet<ZElem> P;
            P.G = &G;
            P.one = ZElem(R, 1);
            for (uint32_t g = 0; g < G.n; ++g) {
                P.T.push_back(ZElem(R, rho[g].tr()));
                P.D.push_back(ZElem(R, rho[g].det()));
            }
            CHECK(check_pseudorep(P).ok());

            // D is forced by T when 2 is a unit
            auto D2 = det_from_trace(G, P.T, R.inv(2));
            for (uint32_t g = 0; g < G.n; ++g) CHECK(D2[g] == P.D[g]);
        }
    }
}

TEST_CASE("reduced GMA example: axioms and Cayley-Hamilton for n <= 6") {
    ZmodRing R(5, 2);
    for (size_t n = 1; n <= 6; ++n) {
        INFO("A = (Z/25)[x]/(x^" << n << ")");
        GmaAlgebra<Series> E{Series::constant(R, n, 1), Series::x(R, n), Series::x(R, n),
                             Series::x(R, n)};
        std::mt19937_64 rng(99 + n);
        auto rand_series = [&] {
            Series s(R, n);
            for (auto& c : s.c) c = rng() % R.m;
            return s;
        };
        std::vector<GmaElem<Series>> span;
        span.push_back({E.one, Series(R, n), Series(R, n), E.one});  // identity
        for (int i = 0; i < 5; ++i)
            span.push_back({rand_series(), rand_series(), rand_series(), rand_series()});

        CHECK(gma_check_axioms(E, span));
        for (const auto& x : span) CHECK(gma_cayley_hamilton(E, x));

        // trace is central: tr(xyz) = tr(zxy) on a few random triples
        for (int i = 0; i < 10; ++i) {
            GmaElem<Series> x = span[rng() % span.size()];
            GmaElem<Series> y = span[rng() % span.size()];
            GmaElem<Series> z = span[rng() % span.size()];
            Series t1 = gma_trace(gma_mul(E, gma_mul(E, x, y), z));
            Series t2 = gma_trace(gma_mul(E, gma_mul(E, z, x), y));
            CHECK(t1.sub(t2).is_zero());
        }
    }
}

TEST_CASE("tangent pseudodeformation with zero lower cocycle") {
    GammaQuotient Ga(5, 19);
    uint64_t p = 5;
    std::vector<uint64_t> omega(Ga.G.n), zero(Ga.G.n, 0);
    for (uint32_t g = 0; g < Ga.G.n; ++g) omega[g] = Ga.sign(g) > 0 ? 1 : p - 1;
    Cochain1 b = kummer_cocycle(Ga);

    auto out = tangent_pseudodef(Ga.G, p, omega, b.v, zero, zero);
    CHECK(out.rho_is_hom);
    CHECK(out.trace_formula);
    CHECK(out.det_is_omega);
    CHECK(out.inertia_example);
    CHECK(out.pr.ok());
    CHECK(out.ok());
}

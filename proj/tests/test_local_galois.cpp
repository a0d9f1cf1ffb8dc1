#include <catch2/catch_amalgamated.hpp>

#include "eisq/local_galois.hpp"

using namespace eisq;

TEST_CASE("frobenius precision v_p(N^2p - 1)") {
    CHECK(frobenius_precision(5, 19) == 2);
    CHECK(frobenius_precision(7, 13) == 2);
    CHECK(frobenius_precision(5, 149) == 3);  // 149 = -1 mod 25
    CHECK(frobenius_precision(7, 97) == 3);   // 97 = -1 mod 49
}

TEST_CASE("local suite passes on the gating instances") {
    for (auto [p, N] : {std::pair<uint64_t, uint64_t>{5, 19}, {7, 13}}) {
        INFO("p=" << p << " N=" << N);
        auto rep = verify_local_suite(p, N, 1, 12, 64);
        CHECK(rep.ok());
        CHECK(rep.frob_precision == 2);
        CHECK(rep.f_lin_valuation == 1);
        CHECK(rep.factor_forward);
        CHECK(rep.factor_backward);
        CHECK(rep.laurent_exact);
        CHECK(rep.model_ok);
        CHECK(rep.hom_pairs);
        CHECK(rep.inertia_pseudorep);
        // the two cofactor constant terms are units
        CHECK(ZmodRing(p, 12).is_unit(rep.u0));
        CHECK(ZmodRing(p, 12).is_unit(rep.w0));
    }
}

TEST_CASE("local suite on another r = 1 instance") {
    auto rep = verify_local_suite(5, 29, 1, 12, 64);
    CHECK(rep.ok());
}

TEST_CASE("truncation stability: K = 64 vs K = 96") {
    auto a = verify_local_suite(5, 19, 1, 12, 64);
    auto b = verify_local_suite(5, 19, 1, 12, 96);
    CHECK(a.ok());
    CHECK(b.ok());
    CHECK(a.f_lin_valuation == b.f_lin_valuation);
    CHECK(a.frob_precision == b.frob_precision);
}

TEST_CASE("precision stability: e = 12 vs e = 16") {
    auto a = verify_local_suite(7, 13, 1, 12, 64);
    auto b = verify_local_suite(7, 13, 1, 16, 64);
    CHECK(a.ok());
    CHECK(b.ok());
    CHECK(a.f_lin_valuation == b.f_lin_valuation);
}

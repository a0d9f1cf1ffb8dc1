#include <catch2/catch_amalgamated.hpp>

#include "eisq/group_ring.hpp"

using namespace eisq;

// The four instances the acceptance gate pins.
static const std::pair<uint64_t, unsigned> kInstances[] = {{5, 1}, {7, 1}, {11, 1}, {5, 2}};

TEST_CASE("plus part of the group ring is presented by x Psi(x)") {
    for (auto [p, r] : kInstances) {
        INFO("p=" << p << " r=" << r);
        ZmodRing R(p, 12);
        DeltaGroup D(p, r);
        auto lam = check_lamplus_presentation(R, D);

        CHECK(lam.xi_psi_annihilates);
        CHECK(lam.powers_free);
        CHECK(lam.power_rank == (int)((D.n + 1) / 2));
        CHECK(lam.powers_span_plus);
        CHECK(lam.involution_is_auto);
        CHECK(lam.psi0_valuation == r);
        CHECK(lam.ok());
    }
}

TEST_CASE("fiber map is an injective ring hom with p-power cokernel") {
    for (auto [p, r] : kInstances) {
        INFO("p=" << p << " r=" << r);
        ZmodRing R(p, 12);
        DeltaGroup D(p, r);
        auto fib = check_fiber_map(R, D);

        CHECK(fib.ring_hom);
        CHECK(fib.injective);
        CHECK(fib.cokernel_p_power);
        CHECK(fib.divisors.size() == D.n);
        CHECK(fib.ok());

        // first elementary divisor is 1: the map hits a primitive vector
        REQUIRE_FALSE(fib.divisors.empty());
        CHECK(fib.divisors.front() == 1);
    }
}

TEST_CASE("group model bookkeeping") {
    DeltaGroup D(5, 2);
    CHECK(D.p == 5);
    CHECK(D.r == 2);
    CHECK(D.n == 25);
}

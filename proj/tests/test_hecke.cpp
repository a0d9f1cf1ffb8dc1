#include <catch2/catch_amalgamated.hpp>

#include "eisq/hecke_local.hpp"

using namespace eisq;

TEST_CASE("instance validation") {
    CHECK(validate_instance(5, 19) == 1);
    CHECK(validate_instance(7, 13) == 1);
    CHECK(validate_instance(5, 149) == 2);
    CHECK(validate_instance(7, 97) == 2);

    CHECK_THROWS_AS(validate_instance(5, 13), std::invalid_argument);  // 5 does not divide 14
    CHECK_THROWS_AS(validate_instance(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(validate_instance(4, 19), std::invalid_argument);
    CHECK_THROWS_AS(validate_instance(3, 17), std::invalid_argument);  // p >= 5
    CHECK_THROWS_AS(validate_instance(5, 24), std::invalid_argument);  // N composite
}

TEST_CASE("newton polygon of Psi") {
    ZmodRing R(5, 12);
    auto np1 = newton_polygon(R, psi_poly(R, 1).c);
    REQUIRE(np1.size() == 2);
    CHECK(np1.front() == std::pair<unsigned, unsigned>{0, 1});
    CHECK(np1.back() == std::pair<unsigned, unsigned>{2, 0});

    auto np2 = newton_polygon(R, psi_poly(R, 2).c);
    REQUIRE(np2.size() == 3);  // slopes break at the Psi_1 | Psi_2 factor split
    CHECK(np2[0] == std::pair<unsigned, unsigned>{0, 2});
    CHECK(np2[1] == std::pair<unsigned, unsigned>{2, 1});
    CHECK(np2[2] == std::pair<unsigned, unsigned>{12, 0});
}

TEST_CASE("generalized kernel of a split nilpotent-plus-invertible matrix") {
    ZmodRing R(5, 4);
    Mat B(R, 3, 3);
    // block diag(5, 2, 10): first and third coordinates are topologically
    // nilpotent, the middle one is a unit
    B.at(0, 0) = 5;
    B.at(1, 1) = 2;
    B.at(2, 2) = 10;
    Mat K = generalized_kernel(B);
    REQUIRE(K.cols == 2);
    // the kernel is spanned by e0 and e2: middle row must vanish
    CHECK(K.at(1, 0) == 0);
    CHECK(K.at(1, 1) == 0);
}

TEST_CASE("default options switch per level size") {
    auto small = default_verify_options(5, 19);
    CHECK(small.e == 12);
    CHECK(small.family.empty());
    CHECK(small.cong_bound == 50);

    auto big = default_verify_options(5, 149);
    CHECK(big.e == 4);
    CHECK(big.family == std::vector<uint64_t>{2, 3, 5, 7, 11, 13});
    CHECK(big.probes == std::vector<uint64_t>{17});
    CHECK(big.cong_bound == 13);
}

static const CheckItem* find_check(const TheoremReport& rep, const std::string& name) {
    for (const auto& c : rep.checks)
        if (c.name == name) return &c;
    return nullptr;
}

TEST_CASE("main theorem verification at (5,19)") {
    auto rep = verify_main_theorem(5, 19);
    INFO("failing checks:");
    for (const auto& c : rep.checks) {
        INFO("  " << c.name << " " << (c.pass ? "ok" : "FAIL") << " " << c.detail);
    }
    CHECK(rep.all_pass());
    CHECK(rep.cuspidal_dim == 22);
    CHECK(rep.rank == 3);
    CHECK(rep.generator_ell == 2);
    CHECK(rep.charpoly == std::vector<uint64_t>{5, 5, 1});  // Psi exactly
    CHECK(rep.eta_valuation == 1);
    CHECK(rep.i2_valuation == 1);
    CHECK(rep.boundary_depth == 1);
    CHECK(rep.congruences.size() == 13);  // primes <= 50 minus {5, 19}
    for (auto& [ell, pass] : rep.congruences) {
        INFO("ell=" << ell);
        CHECK(pass);
    }
    REQUIRE(find_check(rep, "U_N_is_zero"));
    CHECK(find_check(rep, "U_N_is_zero")->pass);
    REQUIRE(find_check(rep, "normalized_generator_charpoly_exact"));
    CHECK(find_check(rep, "normalized_generator_charpoly_exact")->pass);
}

TEST_CASE("main theorem verification at (7,13)") {
    auto rep = verify_main_theorem(7, 13);
    CHECK(rep.all_pass());
    CHECK(rep.cuspidal_dim == 8);
    CHECK(rep.rank == 4);
    CHECK(rep.charpoly == std::vector<uint64_t>{7, 14, 7, 1});
    CHECK(rep.eta_valuation == 1);
    CHECK(rep.i2_valuation == 1);
    CHECK(rep.boundary_depth == 1);
    CHECK(rep.congruences.size() == 13);  // primes <= 50 minus {7, 13}
}

TEST_CASE("localization is stable under enlarging the cutting family") {
    VerifyOptions optA;
    optA.family = {2, 3, 7};
    auto a = verify_main_theorem(5, 19, optA);

    auto b = verify_main_theorem(5, 19);  // full default family

    CHECK(a.all_pass());
    CHECK(b.all_pass());
    CHECK(a.rank == b.rank);
    CHECK(a.charpoly == b.charpoly);
    CHECK(a.eta_valuation == b.eta_valuation);
}

TEST_CASE("precision stability: e = 12 vs e = 16 at (5,19)") {
    auto a = verify_main_theorem(5, 19);

    VerifyOptions opt;
    opt.e = 16;
    auto b = verify_main_theorem(5, 19, opt);

    CHECK(a.all_pass());
    CHECK(b.all_pass());
    CHECK(a.rank == b.rank);
    CHECK(a.eta_valuation == b.eta_valuation);
    CHECK(a.i2_valuation == b.i2_valuation);
    CHECK(a.boundary_depth == b.boundary_depth);

    // charpolys agree after reducing the higher-precision one mod 5^12
    uint64_t m12 = 1;
    for (int i = 0; i < 12; ++i) m12 *= 5;
    REQUIRE(a.charpoly.size() == b.charpoly.size());
    for (size_t i = 0; i < a.charpoly.size(); ++i) CHECK(a.charpoly[i] == b.charpoly[i] % m12);
}

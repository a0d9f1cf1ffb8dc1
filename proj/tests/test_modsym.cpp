#include <catch2/catch_amalgamated.hpp>

#include "eisq/modsym.hpp"

using namespace eisq;

TEST_CASE("genus and index oracle against published values") {
    struct Row {
        uint64_t M, index, nu2, nu3, nu_inf, genus;
    };
    // classical data for X_0(M)
    const Row rows[] = {
        {11, 12, 0, 0, 2, 1},   {13, 14, 2, 2, 2, 0},  {14, 24, 0, 0, 4, 1},
        {22, 36, 0, 0, 4, 2},   {37, 38, 2, 2, 2, 2},  {49, 56, 0, 2, 8, 1},
        {121, 132, 0, 0, 12, 6}, {169, 182, 2, 2, 14, 8}, {361, 380, 0, 2, 20, 22},
    };
    for (const auto& row : rows) {
        INFO("M=" << row.M);
        auto d = dimension_oracle(row.M);
        CHECK(d.index == row.index);
        CHECK(d.nu2 == row.nu2);
        CHECK(d.nu3 == row.nu3);
        CHECK(d.nu_inf == row.nu_inf);
        CHECK(d.genus == row.genus);
    }
}

TEST_CASE("plus space dimensions at the two gating levels") {
    ZmodRing R(5, 12);
    ManinSpace S19(361, +1, R);
    CHECK(S19.dims.index == 380);
    CHECK(S19.cuspidal_dim == 22);  // = genus of X_0(361)

    ZmodRing R7(7, 12);
    ManinSpace S13(169, +1, R7);
    CHECK(S13.dims.index == 182);
    CHECK(S13.cuspidal_dim == 8);
}

TEST_CASE("plus/minus bookkeeping: dim+ + dim- = 2g + nu_inf - 1") {
    for (uint64_t M : {11ull, 37ull, 121ull, 169ull}) {
        INFO("M=" << M);
        ZmodRing R(5, 6);
        ManinSpace P(M, +1, R), N(M, -1, R);
        auto d = dimension_oracle(M);
        CHECK(P.dim + N.dim == 2 * d.genus + d.nu_inf - 1);
        CHECK(P.cuspidal_dim == d.genus);
    }
}

TEST_CASE("level 11 anchor: T_2 characteristic polynomial") {
    ZmodRing R(5, 12);
    ManinSpace S(11, +1, R);
    REQUIRE(S.dim == 2);
    Mat T2 = hecke_op(S, 2);
    // eigenvalues 3 (Eisenstein) and -2 (the elliptic curve 11a), so t^2 - t - 6
    auto cp = charpoly(T2);
    REQUIRE(cp.size() == 3);
    CHECK(cp[2] == 1);
    CHECK(cp[1] == R.neg(1));
    CHECK(cp[0] == R.neg(6));
}

TEST_CASE("Heilbronn and path implementations of T_ell agree") {
    ZmodRing R(5, 8);
    for (auto [M, ell] : {std::pair<uint64_t, uint64_t>{11, 2},
                          {11, 3},
                          {11, 7},
                          {121, 2},
                          {49, 2},
                          {169, 3}}) {
        INFO("M=" << M << " ell=" << ell);
        ManinSpace S(M, +1, R);
        CHECK(hecke_op_heilbronn(S, ell) == hecke_op_paths(S, ell));
    }
}

TEST_CASE("Hecke operators commute, including U at the level") {
    ZmodRing R(7, 10);
    ManinSpace S(169, +1, R);
    Mat T2 = hecke_op(S, 2), T3 = hecke_op(S, 3), U13 = hecke_op(S, 13);
    CHECK(T2.mul(T3) == T3.mul(T2));
    CHECK(T2.mul(U13) == U13.mul(T2));
    CHECK(T3.mul(U13) == U13.mul(T3));
}

TEST_CASE("boundary map: cuspidal subspace has the right dimension") {
    ZmodRing R(5, 12);
    ManinSpace S(121, +1, R);
    auto d = dimension_oracle(121);
    CHECK(S.cuspidal_dim == d.genus);
    CHECK(S.boundary.cols == S.dim);
}

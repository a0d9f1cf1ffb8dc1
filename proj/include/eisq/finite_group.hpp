#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace eisq {

// Finite group as explicit tables.  Metacyclic constructor covers every group
// used here: <t, s | t^T = s^S = 1, s t s^-1 = t^g>, element t^a s^m indexed
// a * S + m.
struct FiniteGroupModel {
    size_t n = 0;
    uint32_t id = 0;
    std::vector<uint32_t> mul_table;  // n*n
    std::vector<uint32_t> inv_table;

    uint32_t mul(uint32_t x, uint32_t y) const { return mul_table[(size_t)x * n + y]; }
    uint32_t inv(uint32_t x) const { return inv_table[x]; }
    uint32_t pow(uint32_t x, uint64_t k) const {
        uint32_t r = id;
        while (k) {
            if (k & 1) r = mul(r, x);
            x = mul(x, x);
            k >>= 1;
        }
        return r;
    }

    // metacyclic bookkeeping (set by the constructor below)
    uint64_t t_order = 0, s_order = 0, act = 0;
    uint32_t elem(uint64_t a, uint64_t m) const {
        return (uint32_t)((a % t_order) * s_order + (m % s_order));
    }
    uint64_t t_exp(uint32_t x) const { return x / s_order; }
    uint64_t s_exp(uint32_t x) const { return x % s_order; }
    uint32_t gen_t() const { return elem(1, 0); }
    uint32_t gen_s() const { return elem(0, 1); }

    static FiniteGroupModel metacyclic(uint64_t T, uint64_t S, uint64_t g) {
        // need g^S = 1 mod T for s^S = 1 to be consistent with the action
        uint64_t gs = 1 % T;
        for (uint64_t i = 0; i < S; ++i) gs = gs * (g % T) % T;
        if (gs != 1 % T)
            throw std::invalid_argument("metacyclic: action exponent g^S != 1 mod T");
        FiniteGroupModel G;
        G.t_order = T;
        G.s_order = S;
        G.act = g % T;
        G.n = T * S;
        G.id = 0;
        G.mul_table.resize(G.n * G.n);
        // powers of the action
        std::vector<uint64_t> gp(S);
        gp[0] = 1 % T;
        for (uint64_t m = 1; m < S; ++m) gp[m] = gp[m - 1] * G.act % T;
        for (uint64_t a1 = 0; a1 < T; ++a1)
            for (uint64_t m1 = 0; m1 < S; ++m1)
                for (uint64_t a2 = 0; a2 < T; ++a2)
                    for (uint64_t m2 = 0; m2 < S; ++m2) {
                        // t^a1 s^m1 t^a2 s^m2 = t^(a1 + a2*g^m1) s^(m1+m2)
                        uint64_t a = (a1 + a2 * gp[m1]) % T;
                        uint64_t m = (m1 + m2) % S;
                        G.mul_table[(size_t)G.elem(a1, m1) * G.n + G.elem(a2, m2)] =
                            G.elem(a, m);
                    }
        G.inv_table.resize(G.n);
        for (uint32_t x = 0; x < G.n; ++x) {
            bool found = false;
            for (uint32_t y = 0; y < G.n; ++y)
                if (G.mul(x, y) == G.id && G.mul(y, x) == G.id) {
                    G.inv_table[x] = y;
                    found = true;
                    break;
                }
            if (!found) throw std::logic_error("metacyclic: element without inverse");
        }
        G.check_axioms();
        return G;
    }

    static FiniteGroupModel cyclic(uint64_t m) { return metacyclic(m, 1, 1 % m); }
    static FiniteGroupModel dihedral(uint64_t m) { return metacyclic(m, 2, m - 1); }
    static FiniteGroupModel symmetric3() { return dihedral(3); }

    // Associativity exhaustively for small groups, randomized beyond that;
    // identity and inverses always exhaustively.
    void check_axioms() const {
        for (uint32_t x = 0; x < n; ++x) {
            if (mul(id, x) != x || mul(x, id) != x)
                throw std::logic_error("group axioms: identity fails");
            if (mul(x, inv(x)) != id || mul(inv(x), x) != id)
                throw std::logic_error("group axioms: inverse fails");
        }
        auto assoc = [&](uint32_t x, uint32_t y, uint32_t z) {
            if (mul(mul(x, y), z) != mul(x, mul(y, z)))
                throw std::logic_error("group axioms: associativity fails");
        };
        if (n <= 350) {
            for (uint32_t x = 0; x < n; ++x)
                for (uint32_t y = 0; y < n; ++y)
                    for (uint32_t z = 0; z < n; ++z) assoc(x, y, z);
        } else {
            std::mt19937 rng(271828);
            for (int t = 0; t < 200000; ++t)
                assoc(rng() % n, rng() % n, rng() % n);
        }
    }
};

}  // namespace eisq

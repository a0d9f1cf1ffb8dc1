#pragma once

#include <vector>

#include "intpoly.hpp"
#include "zmod.hpp"

namespace eisq {

// A p-adic integer known to absolute precision p^e.
struct PadicInt {
    ZmodRing R;
    uint64_t v = 0;

    PadicInt() = default;
    PadicInt(const ZmodRing& ring, uint64_t value) : R(ring), v(value % ring.m) {}

    PadicInt add(const PadicInt& o) const { return {R, R.add(v, o.v)}; }
    PadicInt sub(const PadicInt& o) const { return {R, R.sub(v, o.v)}; }
    PadicInt mul(const PadicInt& o) const { return {R, R.mul(v, o.v)}; }
    PadicInt inverse() const { return {R, R.inv(v)}; }
    unsigned valuation() const { return R.val(v); }
    bool is_unit() const { return R.is_unit(v); }
};

// Polynomial over Z/p^e, coefficients low-to-high.
struct PadicPoly {
    ZmodRing R;
    std::vector<uint64_t> c;

    PadicPoly() = default;
    PadicPoly(const ZmodRing& ring, std::vector<uint64_t> coeffs) : R(ring), c(std::move(coeffs)) {
        for (auto& x : c) x %= R.m;
        trim();
    }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int deg() const { return (int)c.size() - 1; }
    uint64_t coeff(size_t i) const { return i < c.size() ? c[i] : 0; }

    PadicPoly add(const PadicPoly& o) const {
        std::vector<uint64_t> r(std::max(c.size(), o.c.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = R.add(coeff(i), o.coeff(i));
        return {R, std::move(r)};
    }
    PadicPoly sub(const PadicPoly& o) const {
        std::vector<uint64_t> r(std::max(c.size(), o.c.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = R.sub(coeff(i), o.coeff(i));
        return {R, std::move(r)};
    }
    PadicPoly mul(const PadicPoly& o) const {
        if (c.empty() || o.c.empty()) return {R, {}};
        std::vector<uint64_t> r(c.size() + o.c.size() - 1, 0);
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j)
                r[i + j] = R.add(r[i + j], R.mul(c[i], o.c[j]));
        return {R, std::move(r)};
    }
    uint64_t eval(uint64_t x) const {
        uint64_t r = 0;
        for (size_t i = c.size(); i-- > 0;) r = R.add(R.mul(r, x), c[i]);
        return r;
    }
    uint64_t constant_term() const { return coeff(0); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    // Eisenstein at p: monic, all lower coefficients divisible by p, constant
    // term of valuation exactly 1.
    bool is_eisenstein() const {
        if (!is_monic() || c.size() < 2) return false;
        for (size_t i = 0; i + 1 < c.size(); ++i)
            if (R.val(c[i]) == 0) return false;
        return R.val(c[0]) == 1;
    }
};

// Minimal polynomial Psi_i of zeta_{p^i} + zeta_{p^i}^{-1} - 2 over Z, via
// Phi_{p^i}(x) = x^(deg/2) * Psi_i(x + 1/x - 2): descend the palindromic
// cyclotomic to the variable y = x + 1/x, then shift y -> y - 2... i.e.
// Psi_i(z) = Q(z + 2) where Phi(x) = x^m Q(x + 1/x).
inline intpoly::Poly real_cyclotomic_shift_ints(uint64_t p, unsigned i) {
    using namespace intpoly;
    Poly phi = cyclotomic_prime_power(p, i);
    Poly Q = palindromic_descend(phi);
    if (!palindromic_descend_check(phi, Q))
        throw std::logic_error("real_cyclotomic_shift_ints: descend check failed");
    return shift_var(Q, 2);  // Q(y) with y = z + 2
}

inline PadicPoly real_cyclotomic_shift_poly(const ZmodRing& R, unsigned i) {
    intpoly::Poly f = real_cyclotomic_shift_ints(R.p, i);
    std::vector<uint64_t> c(f.size());
    for (size_t k = 0; k < f.size(); ++k) {
        bigint r = f[k] % bigint(R.m);
        if (r < 0) r += R.m;
        c[k] = (uint64_t)r;
    }
    return {R, std::move(c)};
}

// Psi = prod_{i=1}^{r} Psi_i; degree (p^r - 1)/2, v_p(Psi(0)) = r.
inline PadicPoly psi_poly(const ZmodRing& R, unsigned r) {
    PadicPoly acc(R, {1});
    for (unsigned i = 1; i <= r; ++i) acc = acc.mul(real_cyclotomic_shift_poly(R, i));
    return acc;
}

inline intpoly::Poly psi_poly_ints(uint64_t p, unsigned r) {
    intpoly::Poly acc{1};
    for (unsigned i = 1; i <= r; ++i) acc = intpoly::mul(acc, real_cyclotomic_shift_ints(p, i));
    return acc;
}

}  // namespace eisq

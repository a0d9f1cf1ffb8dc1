#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <vector>

namespace eisq {

using bigint = boost::multiprecision::cpp_int;

// Dense integer polynomials, coefficient vector low-to-high.  Everything here
// is exact; these routines back the p-adic code as independent oracles and as
// the source of frozen integer data (cyclotomic coefficients, Smith forms).
namespace intpoly {

using Poly = std::vector<bigint>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int deg(const Poly& f) { return (int)f.size() - 1; }  // deg(0) = -1

inline Poly add(const Poly& f, const Poly& g) {
    Poly r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < f.size(); ++i) r[i] += f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] += g[i];
    trim(r);
    return r;
}
inline Poly sub(const Poly& f, const Poly& g) {
    Poly r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < f.size(); ++i) r[i] += f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
    trim(r);
    return r;
}
inline Poly mul(const Poly& f, const Poly& g) {
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    trim(r);
    return r;
}
inline Poly scale(const Poly& f, const bigint& c) {
    Poly r = f;
    for (auto& x : r) x *= c;
    trim(r);
    return r;
}
inline Poly shift_var(const Poly& f, const bigint& a) {
    // f(x + a) by Horner on the coefficient list
    Poly r;
    for (size_t i = f.size(); i-- > 0;) {
        // r = r * (x + a) + f[i]
        Poly nr(r.size() + 1, 0);
        for (size_t j = 0; j < r.size(); ++j) {
            nr[j + 1] += r[j];
            nr[j] += r[j] * a;
        }
        if (nr.empty()) nr.resize(1, 0);
        nr[0] += f[i];
        trim(nr);
        r = nr;
    }
    return r;
}
inline bigint eval(const Poly& f, const bigint& x) {
    bigint r = 0;
    for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
    return r;
}

// Exact division; throws if g does not divide f over Z.
inline Poly divexact(Poly f, const Poly& g) {
    trim(f);
    if (g.empty()) throw std::domain_error("intpoly::divexact by zero");
    if (f.empty()) return {};
    if (f.size() < g.size()) throw std::domain_error("intpoly::divexact: not divisible");
    const size_t dg = g.size() - 1;
    Poly q(f.size() - dg, 0);
    const bigint& lead = g.back();
    for (size_t k = q.size(); k-- > 0;) {
        bigint& top = f[k + dg];
        if (top == 0) continue;
        if (top % lead != 0) throw std::domain_error("intpoly::divexact: not divisible");
        bigint c = top / lead;
        q[k] = c;
        for (size_t j = 0; j <= dg; ++j) f[k + j] -= c * g[j];
    }
    for (auto& x : f)
        if (x != 0) throw std::domain_error("intpoly::divexact: nonzero remainder");
    return q;
}

// Cyclotomic polynomial Phi_{p^i}(x) = sum_{j<p} x^(j*p^(i-1)).
inline Poly cyclotomic_prime_power(uint64_t p, unsigned i) {
    if (i == 0) throw std::invalid_argument("cyclotomic_prime_power: i >= 1");
    uint64_t step = 1;
    for (unsigned k = 1; k < i; ++k) step *= p;
    Poly f(step * (p - 1) + 1, 0);
    for (uint64_t j = 0; j < p; ++j) f[j * step] = 1;
    return f;
}

// Given a palindromic P of even degree 2m, return Q with P(x) = x^m * Q(x + 1/x),
// using v_k = x^k + x^-k, v_0 = 2, v_1 = y, v_{k+1} = y*v_k - v_{k-1}.
inline Poly palindromic_descend(const Poly& P) {
    int d = deg(P);
    if (d < 0 || d % 2 != 0) throw std::invalid_argument("palindromic_descend: even degree needed");
    int m = d / 2;
    for (int j = 0; j <= d; ++j)
        if (P[j] != P[d - j]) throw std::invalid_argument("palindromic_descend: not palindromic");
    Poly Q{P[m]};
    Poly vkm1{2}, vk{0, 1};  // v_0, v_1
    for (int k = 1; k <= m; ++k) {
        Q = add(Q, scale(vk, P[m + k]));
        // v_{k+1} = y * v_k - v_{k-1}
        Poly yvk(vk.size() + 1, 0);
        for (size_t j = 0; j < vk.size(); ++j) yvk[j + 1] = vk[j];
        Poly vk1 = sub(yvk, vkm1);
        vkm1 = vk;
        vk = vk1;
    }
    return Q;
}

// Verify P(x) = x^m * Q(x + 1/x) exactly, by expanding sum_k Q_k x^(m-k) (x^2+1)^k...
// (direct route: compute x^m * Q evaluated at (x^2+1)/x with denominators cleared).
inline bool palindromic_descend_check(const Poly& P, const Poly& Q) {
    int d = deg(P);
    if (d < 0 || d % 2) return false;
    int m = d / 2;
    // sum_k Q_k * x^(m-k) * (x^2+1)^k  must equal P
    Poly acc;
    Poly x2p1{1, 0, 1};
    Poly pw{1};
    std::vector<Poly> pows(Q.size());
    for (size_t k = 0; k < Q.size(); ++k) {
        pows[k] = pw;
        pw = mul(pw, x2p1);
    }
    for (size_t k = 0; k < Q.size(); ++k) {
        if ((int)k > m) return false;
        Poly term = scale(pows[k], Q[k]);
        Poly shifted(term.size() + (m - k), 0);
        for (size_t j = 0; j < term.size(); ++j) shifted[j + (m - k)] = term[j];
        acc = add(acc, shifted);
    }
    return acc == P;
}

}  // namespace intpoly
}  // namespace eisq

#pragma once

#include <random>
#include <vector>

#include "linalg_zpe.hpp"
#include "padic.hpp"

namespace eisq {

// Delta = cyclic group of order p^r, written additively in the exponent:
// group-like [delta^k] is the basis vector e_k of the group ring.
struct DeltaGroup {
    uint64_t p = 0;
    unsigned r = 0;
    uint64_t n = 0;  // p^r

    DeltaGroup() = default;
    DeltaGroup(uint64_t p_, unsigned r_) : p(p_), r(r_) {
        n = 1;
        for (unsigned i = 0; i < r; ++i) n *= p;
    }
};

// Element of Lambda = (Z/p^e)[Delta].
struct LambdaElem {
    ZmodRing R;
    uint64_t n = 0;
    std::vector<uint64_t> c;  // c[k] = coefficient of [delta^k]

    LambdaElem() = default;
    LambdaElem(const ZmodRing& ring, uint64_t order) : R(ring), n(order), c(order, 0) {}

    static LambdaElem group_like(const ZmodRing& R, uint64_t n, long long k) {
        LambdaElem x(R, n);
        long long kk = k % (long long)n;
        if (kk < 0) kk += (long long)n;
        x.c[(size_t)kk] = 1;
        return x;
    }
    static LambdaElem scalar(const ZmodRing& R, uint64_t n, uint64_t a) {
        LambdaElem x(R, n);
        x.c[0] = a % R.m;
        return x;
    }

    LambdaElem add(const LambdaElem& o) const {
        LambdaElem r = *this;
        for (uint64_t k = 0; k < n; ++k) r.c[k] = R.add(r.c[k], o.c[k]);
        return r;
    }
    LambdaElem sub(const LambdaElem& o) const {
        LambdaElem r = *this;
        for (uint64_t k = 0; k < n; ++k) r.c[k] = R.sub(r.c[k], o.c[k]);
        return r;
    }
    LambdaElem mul(const LambdaElem& o) const {
        LambdaElem r(R, n);
        for (uint64_t i = 0; i < n; ++i) {
            if (!c[i]) continue;
            for (uint64_t j = 0; j < n; ++j) {
                if (!o.c[j]) continue;
                uint64_t k = i + j;
                if (k >= n) k -= n;
                r.c[k] = R.add(r.c[k], R.mul(c[i], o.c[j]));
            }
        }
        return r;
    }
    LambdaElem scalar_mul(uint64_t a) const {
        LambdaElem r = *this;
        for (auto& x : r.c) x = R.mul(x, a);
        return r;
    }
    bool is_zero() const {
        for (auto x : c)
            if (x) return false;
        return true;
    }
    bool operator==(const LambdaElem& o) const { return c == o.c; }

    // iota: group-like inversion [delta^k] -> [delta^-k]
    LambdaElem involution() const {
        LambdaElem r(R, n);
        for (uint64_t k = 0; k < n; ++k) r.c[k ? n - k : 0] = c[k];
        return r;
    }
    // augmentation [delta^k] -> 1
    uint64_t augmentation() const {
        uint64_t s = 0;
        for (auto x : c) s = R.add(s, x);
        return s;
    }
};

// Z_p-basis of the fixed subring Lambda^+: [1] and [delta^j] + [delta^-j].
inline std::vector<LambdaElem> lambda_plus_basis(const ZmodRing& R, const DeltaGroup& D) {
    std::vector<LambdaElem> b;
    b.push_back(LambdaElem::group_like(R, D.n, 0));
    for (uint64_t j = 1; j <= (D.n - 1) / 2; ++j)
        b.push_back(LambdaElem::group_like(R, D.n, (long long)j)
                        .add(LambdaElem::group_like(R, D.n, -(long long)j)));
    return b;
}

// xi = [delta] + [delta^-1] - 2, the presentation generator of Lambda^+.
inline LambdaElem lambda_plus_xi(const ZmodRing& R, const DeltaGroup& D) {
    return LambdaElem::group_like(R, D.n, 1)
        .add(LambdaElem::group_like(R, D.n, -1))
        .sub(LambdaElem::scalar(R, D.n, 2));
}

inline LambdaElem eval_poly(const PadicPoly& f, const LambdaElem& x) {
    LambdaElem r(x.R, x.n);
    for (size_t i = f.c.size(); i-- > 0;) {
        r = r.mul(x);
        r.c[0] = x.R.add(r.c[0], f.c[i]);
    }
    return r;
}

struct LamPlusCheck {
    bool xi_psi_annihilates = false;   // xi * Psi(xi) = 0 at precision
    int power_rank = -1;               // unit rank of {xi^k}, want (p^r+1)/2
    bool powers_free = false;          // the powers span a free direct summand
    bool powers_span_plus = false;     // lambda_plus_basis inside span of powers
    bool involution_is_auto = false;   // iota(ab) = iota(a) iota(b) on random pairs
    unsigned psi0_valuation = 0;       // v_p(Psi(0)), want exactly r
    bool ok() const {
        return xi_psi_annihilates && powers_free && powers_span_plus && involution_is_auto;
    }
};

// Certify Z_p[x]/(x Psi(x)) ~= Lambda^+ at precision e: the generator xi kills
// x Psi(x), and its (p^r+1)/2 powers form a basis of a free direct summand that
// contains (hence equals) Lambda^+.
inline LamPlusCheck check_lamplus_presentation(const ZmodRing& R, const DeltaGroup& D,
                                               uint32_t rng_seed = 12345) {
    LamPlusCheck out;
    PadicPoly psi = psi_poly(R, D.r);
    out.psi0_valuation = R.val(psi.constant_term());

    LambdaElem xi = lambda_plus_xi(R, D);
    PadicPoly xpsi = psi.mul(PadicPoly(R, {0, 1}));
    out.xi_psi_annihilates = eval_poly(xpsi, xi).is_zero();

    uint64_t half = (D.n + 1) / 2;
    Mat P(R, half, D.n);
    LambdaElem pw = LambdaElem::group_like(R, D.n, 0);
    for (uint64_t k = 0; k < half; ++k) {
        for (uint64_t j = 0; j < D.n; ++j) P.at(k, j) = pw.c[j];
        pw = pw.mul(xi);
    }
    Mat Pc = P;
    EchelonResult er = unit_echelon(Pc);
    out.power_rank = er.unit_rank;
    out.powers_free = (er.unit_rank == (int)half) && !er.leftover_nonzero;

    // every symmetric basis vector must be a Z/p^e-combination of the powers
    auto basis = lambda_plus_basis(R, D);
    Mat B(R, D.n, basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
        for (uint64_t i = 0; i < D.n; ++i) B.at(i, j) = basis[j].c[i];
    out.powers_span_plus = solve(P.transpose(), B).has_value();

    std::mt19937 rng(rng_seed);
    out.involution_is_auto = true;
    for (int t = 0; t < 16; ++t) {
        LambdaElem a(R, D.n), b(R, D.n);
        for (auto& x : a.c) x = rng() % R.m;
        for (auto& x : b.c) x = rng() % R.m;
        if (!(a.mul(b).involution() == a.involution().mul(b.involution()))) {
            out.involution_is_auto = false;
            break;
        }
        if (!(a.involution().involution() == a)) {
            out.involution_is_auto = false;
            break;
        }
    }
    return out;
}

// The fiber map Lambda -> Z_p x prod_i Z_p[zeta_{p^i}], [delta] -> (1, zeta_p,
// ..., zeta_{p^r}), as an integer matrix in the group-like basis (columns)
// and the basis {1} u {zeta_{p^i}^j : j < phi(p^i)} (rows).  Square p^r x p^r.
inline std::vector<std::vector<bigint>> fiber_matrix_int(const DeltaGroup& D) {
    using namespace intpoly;
    std::vector<std::vector<bigint>> M(D.n, std::vector<bigint>(D.n, 0));
    for (uint64_t k = 0; k < D.n; ++k) M[0][k] = 1;  // augmentation row
    size_t row0 = 1;
    for (unsigned i = 1; i <= D.r; ++i) {
        Poly phi = cyclotomic_prime_power(D.p, i);
        size_t d = phi.size() - 1;  // phi(p^i)
        uint64_t pi = 1;
        for (unsigned t = 0; t < i; ++t) pi *= D.p;
        // lambda^j mod Phi_{p^i} for j = 0..p^i-1
        std::vector<Poly> pows(pi);
        Poly cur{1};
        for (uint64_t j = 0; j < pi; ++j) {
            pows[j] = cur;
            // multiply by lambda, reduce by monic Phi
            Poly nxt(cur.size() + 1, 0);
            for (size_t t = 0; t < cur.size(); ++t) nxt[t + 1] = cur[t];
            while (nxt.size() > d) {
                bigint lead = nxt.back();
                for (size_t t = 0; t < phi.size(); ++t)
                    nxt[nxt.size() - phi.size() + t] -= lead * phi[t];
                trim(nxt);
                if (nxt.size() > d && nxt.back() == 0) trim(nxt);
            }
            cur = nxt;
        }
        for (uint64_t k = 0; k < D.n; ++k) {
            const Poly& q = pows[k % pi];
            for (size_t t = 0; t < q.size(); ++t) M[row0 + t][k] = q[t];
        }
        row0 += d;
    }
    return M;
}

struct FiberCheck {
    bool ring_hom = false;        // multiplicativity on random pairs, per component
    bool injective = false;       // full rank over Q
    bool cokernel_p_power = false;  // all elementary divisors are powers of p
    std::vector<bigint> divisors;
    bool ok() const { return ring_hom && injective && cokernel_p_power; }
};

inline FiberCheck check_fiber_map(const ZmodRing& R, const DeltaGroup& D,
                                  uint32_t rng_seed = 777) {
    FiberCheck out;
    auto M = fiber_matrix_int(D);
    out.divisors = snf_divisors(M);
    out.injective = out.divisors.size() == D.n;
    out.cokernel_p_power = true;
    for (auto d : out.divisors) {
        while (d % D.p == 0) d /= D.p;
        if (d != 1) out.cokernel_p_power = false;
    }
    // componentwise multiplicativity: push two random elements through the map
    // over Z/p^e and compare with the product's image (polynomial arithmetic
    // mod Phi_{p^i} on each factor)
    std::mt19937 rng(rng_seed);
    out.ring_hom = true;
    Mat Mm(R, D.n, D.n);
    for (uint64_t i = 0; i < D.n; ++i)
        for (uint64_t j = 0; j < D.n; ++j) {
            bigint v = M[i][j] % bigint(R.m);
            if (v < 0) v += R.m;
            Mm.at(i, j) = (uint64_t)v;
        }
    for (int t = 0; t < 8 && out.ring_hom; ++t) {
        LambdaElem a(R, D.n), b(R, D.n);
        for (auto& x : a.c) x = rng() % R.m;
        for (auto& x : b.c) x = rng() % R.m;
        auto fa = Mm.mul_vec(a.c), fb = Mm.mul_vec(b.c), fab = Mm.mul_vec(a.mul(b).c);
        // multiply fa*fb componentwise: component 0 is Z_p; component i is
        // Z/p^e[lambda]/Phi_{p^i}
        std::vector<uint64_t> prod(D.n, 0);
        prod[0] = R.mul(fa[0], fb[0]);
        size_t row0 = 1;
        for (unsigned i = 1; i <= D.r; ++i) {
            intpoly::Poly phi = intpoly::cyclotomic_prime_power(D.p, i);
            size_t d = phi.size() - 1;
            std::vector<uint64_t> pa(fa.begin() + row0, fa.begin() + row0 + d);
            std::vector<uint64_t> pb(fb.begin() + row0, fb.begin() + row0 + d);
            std::vector<uint64_t> pc(2 * d, 0);
            for (size_t x = 0; x < d; ++x)
                for (size_t y = 0; y < d; ++y)
                    pc[x + y] = R.add(pc[x + y], R.mul(pa[x], pb[y]));
            // reduce by monic Phi with coefficients mod p^e
            std::vector<uint64_t> phim(phi.size());
            for (size_t x = 0; x < phi.size(); ++x) {
                bigint v = phi[x] % bigint(R.m);
                if (v < 0) v += R.m;
                phim[x] = (uint64_t)v;
            }
            for (size_t x = pc.size(); x-- > d;) {
                uint64_t lead = pc[x];
                if (!lead) continue;
                for (size_t y = 0; y < phim.size(); ++y)
                    pc[x - d + y] = R.sub(pc[x - d + y], R.mul(lead, phim[y]));
            }
            for (size_t x = 0; x < d; ++x) prod[row0 + x] = pc[x];
            row0 += d;
        }
        if (prod != fab) out.ring_hom = false;
    }
    return out;
}

}  // namespace eisq

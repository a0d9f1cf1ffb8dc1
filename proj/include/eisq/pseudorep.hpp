#pragma once

#include <functional>
#include <vector>

#include "finite_group.hpp"
#include "series.hpp"
#include "zmod.hpp"

namespace eisq {

// Scalar ring element; lets Z/p^e share the TraceDet code path with Series and
// LambdaElem (all expose add/sub/mul/scalar_mul/is_zero and carry their ring).
struct ZElem {
    ZmodRing R;
    uint64_t v = 0;

    ZElem() = default;
    ZElem(const ZmodRing& ring, uint64_t val) : R(ring), v(val % ring.m) {}
    ZElem add(const ZElem& o) const { return {R, R.add(v, o.v)}; }
    ZElem sub(const ZElem& o) const { return {R, R.sub(v, o.v)}; }
    ZElem mul(const ZElem& o) const { return {R, R.mul(v, o.v)}; }
    ZElem scalar_mul(uint64_t a) const { return {R, R.mul(v, a % R.m)}; }
    bool is_zero() const { return v == 0; }
    bool operator==(const ZElem& o) const { return v == o.v; }
};

// Degree-2 pseudorepresentation (T, D) of a finite group model over a
// commutative coefficient ring (Chenevier-style determinant data).
template <class Elem>
struct TraceDet {
    const FiniteGroupModel* G = nullptr;
    std::vector<Elem> T, D;
    Elem one;
};

struct PseudorepCheck {
    bool trace_of_identity = false;  // T(1) = 2
    bool det_of_identity = false;    // D(1) = 1
    bool det_multiplicative = false;
    bool trace_central = false;      // T(xy) = T(yx)
    bool fundamental_identity = false;  // D(x) T(x^-1 y) - T(x) T(y) + T(xy) = 0
    bool ok() const {
        return trace_of_identity && det_of_identity && det_multiplicative && trace_central &&
               fundamental_identity;
    }
};

template <class Elem>
PseudorepCheck check_pseudorep(const TraceDet<Elem>& P) {
    const FiniteGroupModel& G = *P.G;
    PseudorepCheck out;
    Elem two = P.one.add(P.one);
    out.trace_of_identity = P.T[G.id].sub(two).is_zero();
    out.det_of_identity = P.D[G.id].sub(P.one).is_zero();
    out.det_multiplicative = true;
    out.trace_central = true;
    out.fundamental_identity = true;
    for (uint32_t x = 0; x < G.n; ++x)
        for (uint32_t y = 0; y < G.n; ++y) {
            uint32_t xy = G.mul(x, y);
            if (out.det_multiplicative && !P.D[xy].sub(P.D[x].mul(P.D[y])).is_zero())
                out.det_multiplicative = false;
            if (out.trace_central && !P.T[xy].sub(P.T[G.mul(y, x)]).is_zero())
                out.trace_central = false;
            if (out.fundamental_identity) {
                Elem lhs = P.D[x].mul(P.T[G.mul(G.inv(x), y)]).sub(P.T[x].mul(P.T[y])).add(P.T[xy]);
                if (!lhs.is_zero()) out.fundamental_identity = false;
            }
            if (!out.det_multiplicative && !out.trace_central && !out.fundamental_identity)
                return out;
        }
    return out;
}

// D(x) = (T(x)^2 - T(x^2)) / 2; the unique determinant compatible with T when
// 2 is invertible.
template <class Elem>
std::vector<Elem> det_from_trace(const FiniteGroupModel& G, const std::vector<Elem>& T,
                                 uint64_t inv2) {
    std::vector<Elem> D;
    D.reserve(G.n);
    for (uint32_t x = 0; x < G.n; ++x)
        D.push_back(T[x].mul(T[x]).sub(T[G.mul(x, x)]).scalar_mul(inv2));
    return D;
}

// ---- generalized matrix algebra, rank-1 modules ----
//
// E = (A  B; C  A) with B, C cyclic A-modules embedded in A via their
// generators: an element (a, b, c, d) stores the B/C coordinates as ring
// elements, meaning b*genB and c*genC.  The pairing is m(b*genB, c*genC) =
// b*c*m0.  Covers M_2(A) (genB = genC = m0 = 1) and the reduced example
// A = k[x]/(x^n), B = C = xA, m(ax, bx) = abx.
template <class AElem>
struct GmaAlgebra {
    AElem one, genB, genC, m0;

    bool b_zero(const AElem& b) const { return b.mul(genB).is_zero(); }
    bool c_zero(const AElem& c) const { return c.mul(genC).is_zero(); }
};

template <class AElem>
struct GmaElem {
    AElem a, b, c, d;
};

template <class AElem>
GmaElem<AElem> gma_mul(const GmaAlgebra<AElem>& E, const GmaElem<AElem>& x,
                       const GmaElem<AElem>& y) {
    return {x.a.mul(y.a).add(x.b.mul(y.c).mul(E.m0)),
            x.a.mul(y.b).add(x.b.mul(y.d)),
            x.c.mul(y.a).add(x.d.mul(y.c)),
            x.d.mul(y.d).add(x.c.mul(y.b).mul(E.m0))};
}

template <class AElem>
GmaElem<AElem> gma_add(const GmaElem<AElem>& x, const GmaElem<AElem>& y) {
    return {x.a.add(y.a), x.b.add(y.b), x.c.add(y.c), x.d.add(y.d)};
}

template <class AElem>
GmaElem<AElem> gma_sub(const GmaElem<AElem>& x, const GmaElem<AElem>& y) {
    return {x.a.sub(y.a), x.b.sub(y.b), x.c.sub(y.c), x.d.sub(y.d)};
}

template <class AElem>
AElem gma_trace(const GmaElem<AElem>& x) {
    return x.a.add(x.d);
}

template <class AElem>
AElem gma_det(const GmaAlgebra<AElem>& E, const GmaElem<AElem>& x) {
    return x.a.mul(x.d).sub(x.b.mul(x.c).mul(E.m0));
}

// zero test respecting the module structure: a, d on the nose, b, c modulo the
// annihilators of the generators
template <class AElem>
bool gma_is_zero(const GmaAlgebra<AElem>& E, const GmaElem<AElem>& x) {
    return x.a.is_zero() && x.d.is_zero() && E.b_zero(x.b) && E.c_zero(x.c);
}

template <class AElem>
bool gma_equal(const GmaAlgebra<AElem>& E, const GmaElem<AElem>& x, const GmaElem<AElem>& y) {
    return gma_is_zero(E, gma_sub(x, y));
}

// Cayley-Hamilton: x^2 - Tr(x) x + det(x) = 0 in E.
template <class AElem>
bool gma_cayley_hamilton(const GmaAlgebra<AElem>& E, const GmaElem<AElem>& x) {
    GmaElem<AElem> sq = gma_mul(E, x, x);
    AElem t = gma_trace(x), dd = gma_det(E, x);
    GmaElem<AElem> tx{t.mul(x.a), t.mul(x.b), t.mul(x.c), t.mul(x.d)};
    AElem z = dd.sub(dd);  // zero of the ring
    GmaElem<AElem> dI{dd, z, z, dd};
    return gma_is_zero(E, gma_add(gma_sub(sq, tx), dI));
}

// Associativity and trace centrality over a supplied spanning set.
template <class AElem>
bool gma_check_axioms(const GmaAlgebra<AElem>& E, const std::vector<GmaElem<AElem>>& span) {
    for (const auto& x : span)
        for (const auto& y : span) {
            AElem txy = gma_trace(gma_mul(E, x, y));
            AElem tyx = gma_trace(gma_mul(E, y, x));
            if (!txy.sub(tyx).is_zero()) return false;
            for (const auto& z : span) {
                GmaElem<AElem> l = gma_mul(E, gma_mul(E, x, y), z);
                GmaElem<AElem> r = gma_mul(E, x, gma_mul(E, y, z));
                if (!gma_equal(E, l, r)) return false;
            }
        }
    return true;
}

// ---- tangent-space pseudodeformation from a pair of cocycles ----
//
// Over F_p[eps]/(eps^2): rho(g) = (omega(1 + phi eps), b(g); omega c(g), 1 +
// phi' eps) in the reduced GMA with B = C = eps*A, where phi' = b*c - phi and
// -d(phi) = b cup c.  T = omega + 1 + eps(omega phi + phi'), D = omega.
struct TangentPseudodef {
    TraceDet<Series> P;
    bool rho_is_hom = false;        // gma-valued rho multiplicative on all pairs
    bool trace_formula = false;     // T matches the displayed formula
    bool det_is_omega = false;      // D(g) = omega(g), the fixed determinant
    bool inertia_example = false;   // on <t>: T = 2 + b c eps
    PseudorepCheck pr;
    bool ok() const {
        return rho_is_hom && trace_formula && det_is_omega && inertia_example && pr.ok();
    }
};

// omega, b, c, phi are tables over the group with values mod p; omega takes
// values +-1.  The cochain conditions (cocycle for b, c; -d phi = b cup c) are
// the caller's responsibility; everything downstream is verified here.
inline TangentPseudodef tangent_pseudodef(const FiniteGroupModel& G, uint64_t p,
                                          const std::vector<uint64_t>& omega,
                                          const std::vector<uint64_t>& b,
                                          const std::vector<uint64_t>& c,
                                          const std::vector<uint64_t>& phi) {
    ZmodRing Fp(p, 1);
    const size_t K = 2;
    auto cst = [&](uint64_t v) { return Series::constant(Fp, K, v); };
    auto eps_mult = [&](uint64_t v) {
        Series s(Fp, K);
        s.c[1] = v % p;
        return s;
    };
    GmaAlgebra<Series> E{cst(1), eps_mult(1), eps_mult(1), eps_mult(1)};

    std::vector<GmaElem<Series>> rho(G.n);
    std::vector<uint64_t> phip(G.n);
    for (uint32_t g = 0; g < G.n; ++g) {
        phip[g] = Fp.sub(Fp.mul(b[g], c[g]), phi[g]);
        Series a = cst(omega[g]).add(eps_mult(Fp.mul(omega[g], phi[g])));
        Series bb = cst(b[g]);                      // coordinate: b(g) * genB
        Series cc = cst(Fp.mul(omega[g], c[g]));    // omega(g) c(g) * genC
        Series d = cst(1).add(eps_mult(phip[g]));
        rho[g] = {a, bb, cc, d};
    }

    TangentPseudodef out;
    out.rho_is_hom = true;
    for (uint32_t x = 0; x < G.n && out.rho_is_hom; ++x)
        for (uint32_t y = 0; y < G.n; ++y)
            if (!gma_equal(E, gma_mul(E, rho[x], rho[y]), rho[G.mul(x, y)])) {
                out.rho_is_hom = false;
                break;
            }

    out.P.G = &G;
    out.P.one = cst(1);
    out.P.T.resize(G.n);
    out.P.D.resize(G.n);
    out.trace_formula = true;
    out.det_is_omega = true;
    for (uint32_t g = 0; g < G.n; ++g) {
        out.P.T[g] = gma_trace(rho[g]);
        out.P.D[g] = gma_det(E, rho[g]);
        Series tf = cst(Fp.add(omega[g], 1))
                        .add(eps_mult(Fp.add(Fp.mul(omega[g], phi[g]), phip[g])));
        if (!(out.P.T[g] == tf)) out.trace_formula = false;
        if (!(out.P.D[g] == cst(omega[g]))) out.det_is_omega = false;
    }
    out.pr = check_pseudorep(out.P);

    out.inertia_example = true;
    uint32_t t = G.gen_t();
    uint32_t g = G.id;
    for (uint64_t a = 0; a < G.t_order; ++a) {
        Series expect = cst(2).add(eps_mult(Fp.mul(b[g], c[g])));
        if (!(out.P.T[g] == expect)) out.inertia_example = false;
        g = G.mul(g, t);
    }
    return out;
}

}  // namespace eisq

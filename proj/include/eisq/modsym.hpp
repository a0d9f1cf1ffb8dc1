#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linalg_zpe.hpp"

// Weight-2 modular symbols for Gamma_0(M) with coefficients in Z/p^e, built
// from Manin symbols: generators indexed by P^1(Z/M), two- and three-term
// relations, and a star-involution sign quotient.  The presentation is checked
// against the standard genus/cusp dimension formulas at construction time, so
// a successfully built ManinSpace is already a verified model of the plus (or
// minus) quotient.

namespace eisq {

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::runtime_error(msg);
}

// ---------------------------------------------------------------------------
// elementary helpers

inline long long egcd_ll(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    long long x1, y1;
    long long g = egcd_ll(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline uint64_t mod_u(long long x, uint64_t M) {
    long long r = x % (long long)M;
    if (r < 0) r += (long long)M;
    return (uint64_t)r;
}

inline bool is_prime_u(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::pair<uint64_t, unsigned>> factorize_u(uint64_t n) {
    std::vector<std::pair<uint64_t, unsigned>> f;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) { n /= d; ++e; }
        f.emplace_back(d, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

// ---------------------------------------------------------------------------
// genus / cusp-count oracle for X_0(M) (classical formulas)

struct Gamma0Data {
    uint64_t M = 0;
    uint64_t index = 0;   // [SL_2(Z) : Gamma_0(M)] = |P^1(Z/M)|
    uint64_t nu2 = 0;     // elliptic points of order 2
    uint64_t nu3 = 0;     // elliptic points of order 3
    uint64_t nu_inf = 0;  // cusps
    uint64_t genus = 0;
};

inline Gamma0Data dimension_oracle(uint64_t M) {
    require(M >= 1, "dimension_oracle: M >= 1");
    Gamma0Data d;
    d.M = M;
    auto fac = factorize_u(M);
    d.index = M;
    for (auto& [q, e] : fac) d.index = d.index / q * (q + 1);
    d.nu2 = 1;
    if (M % 4 == 0)
        d.nu2 = 0;
    else
        for (auto& [q, e] : fac) {
            if (q == 2) continue;
            if (q % 4 == 1) d.nu2 *= 2;
            else d.nu2 = 0;
        }
    d.nu3 = 1;
    if (M % 9 == 0)
        d.nu3 = 0;
    else
        for (auto& [q, e] : fac) {
            if (q == 3) continue;
            if (q % 3 == 1) d.nu3 *= 2;
            else d.nu3 = 0;
        }
    // nu_inf = sum over divisors d of phi(gcd(d, M/d))
    auto phi = [](uint64_t n) {
        if (n == 0) return (uint64_t)0;
        uint64_t r = n;
        for (auto& [q, e] : factorize_u(n)) r = r / q * (q - 1);
        return r;
    };
    d.nu_inf = 0;
    for (uint64_t dv = 1; dv <= M; ++dv) {
        if (M % dv) continue;
        d.nu_inf += phi(std::gcd(dv, M / dv));
    }
    // genus = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2 (always an integer)
    long long twelve_g = 12 + (long long)d.index - 3 * (long long)d.nu2 - 4 * (long long)d.nu3 -
                         6 * (long long)d.nu_inf;
    require(twelve_g >= 0 && twelve_g % 12 == 0, "dimension_oracle: genus formula not integral");
    d.genus = (uint64_t)(twelve_g / 12);
    return d;
}

// ---------------------------------------------------------------------------
// P^1(Z/M)

// Canonical form of (c:d) in P^1(Z/M); returns (0,0) when gcd(c,d,M) != 1.
// First coordinate of the canonical form is gcd(c,M); the second is minimized
// over the residual scaling freedom, so equality of points is equality of
// canonical forms.
inline std::pair<uint64_t, uint64_t> p1_normalize(uint64_t M, long long c0, long long d0) {
    require(M >= 2, "p1_normalize: M >= 2");
    uint64_t u = mod_u(c0, M), v = mod_u(d0, M);
    if (u == 0) return std::gcd(v, M) == 1 ? std::make_pair((uint64_t)0, (uint64_t)1)
                                           : std::make_pair((uint64_t)0, (uint64_t)0);
    long long s_, t_;
    long long g = egcd_ll((long long)u, (long long)M, s_, t_);
    uint64_t s = mod_u(s_, M);
    if (std::gcd((uint64_t)g, v) != 1) return {0, 0};
    // s*u = g (mod M); bump s by M/g until it is a unit mod M
    uint64_t Mg = M / (uint64_t)g;
    while (std::gcd(s, M) != 1) s = (s + Mg) % M;
    uint64_t uu = (uint64_t)g;
    uint64_t vv = (uint64_t)((unsigned __int128)s * v % M);
    // minimize vv over multipliers t = 1 + j*(M/g) that are units mod M
    if ((uint64_t)g > 1) {
        uint64_t vmin = vv, vcur = vv, t = 1;
        uint64_t vNg = (uint64_t)((unsigned __int128)vv * Mg % M);
        for (uint64_t j = 2; j <= (uint64_t)g; ++j) {
            vcur = (vcur + vNg) % M;
            t = (t + Mg) % M;
            if (vcur < vmin && std::gcd(t, M) == 1) vmin = vcur;
        }
        vv = vmin;
    }
    return {uu, vv};
}

struct P1Space {
    uint64_t M = 0;
    std::vector<std::pair<uint64_t, uint64_t>> points;  // canonical (c,d)
    std::unordered_map<uint64_t, uint32_t> lookup;      // key c*M+d -> index

    explicit P1Space(uint64_t M_) : M(M_) {
        auto push = [&](uint64_t c, uint64_t d) {
            uint64_t key = c * M + d;
            if (lookup.emplace(key, (uint32_t)points.size()).second) points.emplace_back(c, d);
        };
        push(0, 1);
        for (uint64_t d = 0; d < M; ++d) push(1, d);
        for (uint64_t g = 2; g < M; ++g) {
            if (M % g) continue;
            for (uint64_t d = 0; d < M; ++d) {
                auto nf = p1_normalize(M, (long long)g, (long long)d);
                if (nf.first == g && nf.second == d) push(g, d);
            }
        }
    }

    size_t size() const { return points.size(); }

    // index of (c:d); requires gcd(c,d,M) = 1
    uint32_t index(long long c, long long d) const {
        auto nf = p1_normalize(M, c, d);
        require(!(nf.first == 0 && nf.second == 0), "P1Space::index: point not defined");
        auto it = lookup.find(nf.first * M + nf.second);
        require(it != lookup.end(), "P1Space::index: canonical form missing");
        return it->second;
    }
};

// ---------------------------------------------------------------------------
// cusps

struct Cusp {
    long long p = 1, q = 0;  // reduced, q >= 0; (1,0) is infinity
    bool operator==(const Cusp& o) const { return p == o.p && q == o.q; }
};

inline Cusp make_cusp(long long a, long long b) {
    if (b == 0) return {1, 0};
    if (b < 0) { a = -a; b = -b; }
    long long g = std::gcd(a < 0 ? -a : a, b);
    if (g == 0) g = 1;
    return {a / g, b / g};
}

// Gamma_0(M)-equivalence of cusps (Cremona's criterion): p1/q1 ~ p2/q2 iff
// s1*q2 = s2*q1 mod gcd(q1*q2, M), where pi*si = 1 mod qi.  For q = 0 the
// inverse degenerates to s = p = +-1.
inline bool cusp_equiv(uint64_t M, const Cusp& A, const Cusp& B) {
    auto inv_mod = [](long long p, long long q) -> long long {
        if (q == 0) return p;  // p = +-1 for a reduced fraction
        long long x, y;
        egcd_ll(p % q, q, x, y);
        return x;
    };
    long long s1 = inv_mod(A.p, A.q), s2 = inv_mod(B.p, B.q);
    long long g = std::gcd(A.q * B.q, (long long)M);
    if (g == 0) g = (long long)M;
    long long lhs = (s1 * B.q - s2 * A.q) % g;
    return lhs == 0;
}

// ---------------------------------------------------------------------------
// SL_2(Z) lifts of P^1 points

struct Sl2 {
    long long a = 1, b = 0, c = 0, d = 1;  // det = +1
};

inline Sl2 lift_to_sl2z(uint64_t M, uint64_t c, uint64_t d) {
    long long cc = (long long)c, dd = (long long)d;
    while (std::gcd(cc, dd) != 1) dd += (long long)M;  // gcd(c,d,M)=1 makes this terminate
    long long x, y;
    egcd_ll(cc, dd, x, y);  // x*c + y*d = 1
    Sl2 g{y, -x, cc, dd};   // det = y*d + x*c = 1
    require(g.a * g.d - g.b * g.c == 1, "lift_to_sl2z: det != 1");
    return g;
}

// ---------------------------------------------------------------------------
// fast modular row arithmetic (Barrett when the modulus fits 32 bits)

struct RowOps {
    uint64_t m = 0, magic = 0;
    bool fast = false;
    explicit RowOps(uint64_t m_) : m(m_) {
        fast = (m >> 32) == 0;
        if (fast) magic = (uint64_t)((((unsigned __int128)1) << 64) / m);
    }
    uint64_t red(uint64_t x) const {
        uint64_t q = (uint64_t)(((unsigned __int128)x * magic) >> 64);
        uint64_t r = x - q * m;
        while (r >= m) r -= m;
        return r;
    }
    // dst += f*src (entrywise, mod m)
    void axpy(uint64_t* dst, const uint64_t* src, size_t n, uint64_t f) const {
        if (!f) return;
        if (fast) {
            for (size_t i = 0; i < n; ++i) dst[i] = red(dst[i] + f * src[i]);
        } else {
            for (size_t i = 0; i < n; ++i)
                dst[i] = (uint64_t)(((unsigned __int128)f * src[i] + dst[i]) % m);
        }
    }
};

// ---------------------------------------------------------------------------
// the Manin-symbol quotient

struct CuspClasses {
    uint64_t M = 0;
    int sign = +1;
    std::vector<Cusp> reps;            // Gamma_0-class representatives
    std::vector<int> reduced_index;    // per class: signed-class id, -1 if killed
    std::vector<int> reduced_sign;     // per class: +-1 multiplier onto its signed class
    size_t n_reduced = 0;

    mutable std::unordered_map<long long, int> cache;

    int classify(const Cusp& c) const {
        long long key = (c.p << 32) ^ c.q;  // |p|, q < 2^31 for all cusps seen here
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        for (size_t k = 0; k < reps.size(); ++k)
            if (cusp_equiv(M, reps[k], c)) {
                cache.emplace(key, (int)k);
                return (int)k;
            }
        cache.emplace(key, -1);
        return -1;
    }
};

struct ManinSpace {
    uint64_t M = 0;
    int sign = +1;
    ZmodRing R;
    P1Space p1;
    Gamma0Data dims;

    size_t dim = 0;
    std::vector<uint32_t> basis_point;        // P^1 index of each basis symbol
    std::vector<std::vector<uint64_t>> enc;   // P^1 point -> coordinates (length dim)
    CuspClasses cusps;
    size_t nu_inf_signed = 0;                 // cusp classes surviving in the sign quotient
    Mat boundary;                             // nu_inf_signed x dim
    size_t cuspidal_dim = 0;                  // = genus when everything is consistent
    uint64_t content_key = 0;                 // FNV-1a of the whole presentation

    ManinSpace(uint64_t M_, int sign_, const ZmodRing& R_)
        : M(M_), sign(sign_), R(R_), p1(M_) {
        require(sign == 1 || sign == -1, "ManinSpace: sign must be +-1");
        require(R.p >= 5, "ManinSpace: relation quotient needs p >= 5 (torsion at 2,3)");
        dims = dimension_oracle(M);
        require(p1.size() == dims.index, "ManinSpace: |P^1| != index");
        build();
    }

    std::vector<uint64_t> zero_vec() const { return std::vector<uint64_t>(dim, 0); }

    // right action of the standard 2x2 generators on P^1 indices
    uint32_t act_S(uint32_t i) const {
        auto [c, d] = p1.points[i];
        return p1.index((long long)d, -(long long)c);
    }
    uint32_t act_T(uint32_t i) const {
        auto [c, d] = p1.points[i];
        return p1.index((long long)d, -(long long)c - (long long)d);
    }
    uint32_t act_eta(uint32_t i) const {
        auto [c, d] = p1.points[i];
        return p1.index(-(long long)c, (long long)d);
    }

private:
    // signed union-find state (only used during build)
    std::vector<uint32_t> uf_parent;
    std::vector<uint8_t> uf_par;  // parity of sign relative to parent
    std::vector<uint8_t> uf_dead;

    std::pair<uint32_t, uint8_t> uf_find(uint32_t i) {
        if (uf_parent[i] == i) return {i, 0};
        auto [r, s] = uf_find(uf_parent[i]);
        uf_parent[i] = r;
        uf_par[i] ^= s;
        return {r, uf_par[i]};
    }

    // impose x_i = (-1)^par * x_j
    void uf_unite(uint32_t i, uint32_t j, uint8_t par) {
        auto [ri, si] = uf_find(i);
        auto [rj, sj] = uf_find(j);
        if (ri == rj) {
            if ((uint8_t)(si ^ sj) != par) uf_dead[ri] = 1;
            return;
        }
        uf_parent[rj] = ri;
        uf_par[rj] = (uint8_t)(si ^ sj ^ par);
        uf_dead[ri] |= uf_dead[rj];
    }

    void build() {
        const size_t n = p1.size();
        uf_parent.resize(n);
        uf_par.assign(n, 0);
        uf_dead.assign(n, 0);
        for (size_t i = 0; i < n; ++i) uf_parent[i] = (uint32_t)i;

        // 2-term relations: x = sign * x.eta  and  x + x.S = 0
        for (uint32_t i = 0; i < n; ++i) uf_unite(i, act_eta(i), sign == 1 ? 0 : 1);
        for (uint32_t i = 0; i < n; ++i) uf_unite(i, act_S(i), 1);

        // column ids for live roots
        std::vector<int32_t> colid(n, -1);
        std::vector<uint32_t> root_of_col;
        for (uint32_t i = 0; i < n; ++i) {
            auto [r, s] = uf_find(i);
            (void)s;
            if (!uf_dead[r] && colid[r] < 0) {
                colid[r] = (int32_t)root_of_col.size();
                root_of_col.push_back(r);
            }
        }
        const size_t ncols = root_of_col.size();

        // 3-term relations x + x.T + x.T^2 = 0, one row per T-orbit
        using SRow = std::vector<std::pair<uint32_t, uint64_t>>;  // sorted by col
        std::vector<SRow> rows;
        {
            std::vector<uint8_t> seen(n, 0);
            for (uint32_t i = 0; i < n; ++i) {
                if (seen[i]) continue;
                uint32_t i2 = act_T(i), i3 = act_T(i2);
                seen[i] = seen[i2] = seen[i3] = 1;
                std::unordered_map<uint32_t, uint64_t> acc;
                for (uint32_t k : {i, i2, i3}) {
                    auto [r, s] = uf_find(k);
                    if (uf_dead[r]) continue;
                    uint64_t c = s ? R.m - 1 : 1;
                    auto [it, fresh] = acc.emplace((uint32_t)colid[r], c);
                    if (!fresh) it->second = R.add(it->second, c);
                }
                SRow row;
                for (auto& [c, v] : acc)
                    if (v) row.emplace_back(c, v);
                if (row.empty()) continue;
                std::sort(row.begin(), row.end());
                rows.push_back(std::move(row));
            }
        }

        // sparse elimination with unit pivots; p-torsion would be a model error
        std::vector<SRow> pivot_rows;          // creation order
        std::vector<uint32_t> pivot_col_of;    // per pivot row: its column
        std::unordered_map<uint32_t, uint32_t> pivot_of_col;  // col -> pivot row id
        auto row_sub = [&](SRow& row, const SRow& prow, uint64_t f) {
            // row -= f * prow
            SRow out;
            out.reserve(row.size() + prow.size());
            size_t a = 0, b = 0;
            while (a < row.size() || b < prow.size()) {
                if (b == prow.size() || (a < row.size() && row[a].first < prow[b].first)) {
                    out.push_back(row[a++]);
                } else if (a == row.size() || prow[b].first < row[a].first) {
                    uint64_t v = R.sub(0, R.mul(f, prow[b].second));
                    if (v) out.emplace_back(prow[b].first, v);
                    ++b;
                } else {
                    uint64_t v = R.sub(row[a].second, R.mul(f, prow[b].second));
                    if (v) out.emplace_back(row[a].first, v);
                    ++a, ++b;
                }
            }
            row.swap(out);
        };
        for (SRow& row : rows) {
            for (;;) {
                // earliest-created pivot present in the row; subtracting it can
                // only introduce later pivots, so this terminates
                uint32_t best = UINT32_MAX;
                uint64_t f = 0;
                for (auto& [c, v] : row) {
                    auto it = pivot_of_col.find(c);
                    if (it != pivot_of_col.end() && it->second < best) {
                        best = it->second;
                        f = v;
                    }
                }
                if (best == UINT32_MAX) break;
                row_sub(row, pivot_rows[best], f);
            }
            if (row.empty()) continue;
            // pivot on a unit entry (prefer the largest column index)
            size_t pick = SIZE_MAX;
            for (size_t k = row.size(); k-- > 0;)
                if (R.is_unit(row[k].second)) { pick = k; break; }
            require(pick != SIZE_MAX, "ManinSpace: relation with no unit entry (p-torsion)");
            uint64_t inv = R.inv(row[pick].second);
            for (auto& [c, v] : row) v = R.mul(v, inv);
            uint32_t pc = row[pick].first;
            pivot_of_col.emplace(pc, (uint32_t)pivot_rows.size());
            pivot_col_of.push_back(pc);
            pivot_rows.push_back(std::move(row));
        }

        // basis = live columns without pivot
        std::vector<int32_t> basis_id(ncols, -1);
        for (uint32_t c = 0; c < ncols; ++c)
            if (!pivot_of_col.count(c)) {
                basis_id[c] = (int32_t)dim;
                basis_point.push_back(root_of_col[c]);
                ++dim;
            }

        // coordinates of every live column, by back-substitution in reverse
        // creation order (pivot rows only reference later pivots and basis cols)
        RowOps ops(R.m);
        std::vector<uint64_t> colvec(ncols * dim, 0);
        std::vector<uint8_t> done(ncols, 0);
        for (uint32_t c = 0; c < ncols; ++c)
            if (basis_id[c] >= 0) {
                colvec[(size_t)c * dim + (size_t)basis_id[c]] = 1;
                done[c] = 1;
            }
        for (size_t k = pivot_rows.size(); k-- > 0;) {
            uint32_t pc = pivot_col_of[k];
            uint64_t* dst = &colvec[(size_t)pc * dim];
            for (auto& [c, v] : pivot_rows[k]) {
                if (c == pc) continue;
                require(done[c], "ManinSpace: back-substitution order violated");
                ops.axpy(dst, &colvec[(size_t)c * dim], dim, R.neg(v));
            }
            done[pc] = 1;
        }

        // encode every P^1 point
        enc.assign(n, {});
        for (uint32_t i = 0; i < n; ++i) {
            auto [r, s] = uf_find(i);
            enc[i].assign(dim, 0);
            if (uf_dead[r]) continue;
            const uint64_t* src = &colvec[(size_t)colid[r] * dim];
            if (!s)
                std::copy(src, src + dim, enc[i].begin());
            else
                for (size_t k = 0; k < dim; ++k) enc[i][k] = R.neg(src[k]);
        }
        for (size_t j = 0; j < dim; ++j) {
            const auto& row = enc[basis_point[j]];
            for (size_t k = 0; k < dim; ++k)
                require(row[k] == (k == j ? 1u : 0u), "ManinSpace: basis row not a unit vector");
        }
        uf_parent.clear();
        uf_parent.shrink_to_fit();

        // relation consistency over the full point list
        for (uint32_t i = 0; i < n; ++i) {
            uint32_t is = act_S(i), it = act_T(i), itt = act_T(it), ie = act_eta(i);
            for (size_t k = 0; k < dim; ++k) {
                require(R.add(enc[i][k], enc[is][k]) == 0, "ManinSpace: S-relation violated");
                require(R.add(enc[i][k], R.add(enc[it][k], enc[itt][k])) == 0,
                        "ManinSpace: T-relation violated");
                uint64_t rhs = sign == 1 ? enc[ie][k] : R.neg(enc[ie][k]);
                require(enc[i][k] == rhs, "ManinSpace: eta-relation violated");
            }
        }

        build_cusps_and_boundary();
        check_dimensions();
        content_key = hash_presentation();
    }

    void build_cusps_and_boundary() {
        const size_t n = p1.size();
        cusps.M = M;
        cusps.sign = sign;
        // gather Gamma_0-classes from the boundary cusps of all symbols
        std::vector<std::pair<int, int>> point_bd(n);  // class ids of (gamma.inf, gamma.0)
        for (uint32_t i = 0; i < n; ++i) {
            auto [c, d] = p1.points[i];
            Sl2 g = lift_to_sl2z(M, c, d);
            Cusp ci = make_cusp(g.a, g.c), c0 = make_cusp(g.b, g.d);
            for (Cusp* cp : {&ci, &c0}) {
                if (cusps.classify(*cp) < 0) {
                    cusps.reps.push_back(*cp);
                    cusps.cache.clear();  // rep list changed
                }
            }
            point_bd[i] = {cusps.classify(ci), cusps.classify(c0)};
        }
        require(cusps.reps.size() == dims.nu_inf, "ManinSpace: cusp count != nu_inf");

        // sign quotient on cusp classes: [-x] is identified with sign*[x]
        size_t nc = cusps.reps.size();
        cusps.reduced_index.assign(nc, -2);
        cusps.reduced_sign.assign(nc, +1);
        for (size_t k = 0; k < nc; ++k) {
            if (cusps.reduced_index[k] != -2) continue;
            Cusp neg = make_cusp(-cusps.reps[k].p, cusps.reps[k].q);
            int nk = cusps.classify(neg);
            require(nk >= 0, "ManinSpace: negated cusp not classified");
            if (nk == (int)k) {
                if (sign == 1) {
                    cusps.reduced_index[k] = (int)cusps.n_reduced++;
                } else {
                    cusps.reduced_index[k] = -1;  // [x] = -[x] kills the class
                }
            } else {
                cusps.reduced_index[k] = (int)cusps.n_reduced;
                cusps.reduced_sign[k] = +1;
                cusps.reduced_index[nk] = (int)cusps.n_reduced;
                cusps.reduced_sign[nk] = sign;
                ++cusps.n_reduced;
            }
        }
        nu_inf_signed = cusps.n_reduced;

        // boundary of {gamma.0, gamma.inf} is [gamma.inf] - [gamma.0]
        auto bd_vec = [&](uint32_t i) {
            std::vector<uint64_t> v(cusps.n_reduced, 0);
            auto [ki, k0] = point_bd[i];
            if (cusps.reduced_index[ki] >= 0) {
                uint64_t s = cusps.reduced_sign[ki] == 1 ? 1 : R.m - 1;
                size_t t = (size_t)cusps.reduced_index[ki];
                v[t] = R.add(v[t], s);
            }
            if (cusps.reduced_index[k0] >= 0) {
                uint64_t s = cusps.reduced_sign[k0] == 1 ? R.m - 1 : 1;
                size_t t = (size_t)cusps.reduced_index[k0];
                v[t] = R.add(v[t], s);
            }
            return v;
        };
        boundary = Mat(R, cusps.n_reduced, dim);
        for (size_t j = 0; j < dim; ++j) {
            auto v = bd_vec(basis_point[j]);
            for (size_t i = 0; i < cusps.n_reduced; ++i) boundary.at(i, j) = v[i];
        }
        // every point must satisfy  boundary * enc(x) == pointwise boundary(x)
        Mat encT(R, dim, n);
        for (uint32_t i = 0; i < n; ++i)
            for (size_t k = 0; k < dim; ++k) encT.at(k, i) = enc[i][k];
        Mat lhs = boundary.mul(encT);
        for (uint32_t i = 0; i < n; ++i) {
            auto v = bd_vec(i);
            for (size_t k = 0; k < cusps.n_reduced; ++k)
                require(lhs.at(k, i) == v[k], "ManinSpace: boundary map inconsistent");
        }
    }

    void check_dimensions() {
        // dim of the sign quotient: g + nu_inf^sign - 1 for +, g + nu_inf^sign for -
        size_t expect = dims.genus + nu_inf_signed - (sign == 1 ? 1 : 0);
        require(dim == expect, "ManinSpace: quotient dimension != genus formula");
        Mat B = boundary;
        EchelonResult e = unit_rref(B);
        require(!e.leftover_nonzero, "ManinSpace: boundary image not a free summand");
        size_t bd_rank = (size_t)e.unit_rank;
        require(bd_rank == nu_inf_signed - (sign == 1 ? 1 : 0),
                "ManinSpace: boundary rank unexpected");
        cuspidal_dim = dim - bd_rank;
        require(cuspidal_dim == dims.genus, "ManinSpace: cuspidal dimension != genus");
    }

    uint64_t hash_presentation() const {
        uint64_t h = 1469598103934665603ULL;
        auto mix = [&](uint64_t x) {
            h ^= x;
            h *= 1099511628211ULL;
        };
        mix(M);
        mix((uint64_t)(sign + 2));
        mix(R.p);
        mix(R.e);
        mix(dim);
        for (uint32_t b : basis_point) mix(b);
        for (const auto& row : enc)
            for (uint64_t x : row) mix(x);
        return h;
    }
};

// ---------------------------------------------------------------------------
// Hecke operators

struct HMat {
    long long x, y, z, w;
};

// Heilbronn matrices of determinant ell (Cremona's list), for ell prime.
inline std::vector<HMat> heilbronn_cremona(uint64_t ell) {
    std::vector<HMat> out;
    long long p = (long long)ell;
    out.push_back({1, 0, 0, p});
    for (long long s = 0; s < p; ++s) {
        long long r = s - (p - 1) / 2;
        long long x1 = p, x2 = -r, y1 = 0, y2 = 1;
        long long a = -p, b = r;
        out.push_back({x1, x2, y1, y2});
        while (b != 0) {
            double qd = (double)a / (double)b;
            long long q = (long long)llround(qd);
            long long c = a - b * q;
            a = -b;
            b = c;
            long long x3 = q * x2 - x1;
            x1 = x2;
            x2 = x3;
            long long y3 = q * y2 - y1;
            y1 = y2;
            y2 = y3;
            out.push_back({x1, x2, y1, y2});
        }
    }
    for (auto& h : out) require(h.x * h.w - h.y * h.z == p, "heilbronn_cremona: det != ell");
    return out;
}

// T_ell on the quotient via Heilbronn matrices; requires ell prime, ell ∤ M.
// Every image point is automatically defined because det(h) = ell is a unit
// mod M.
inline Mat hecke_op_heilbronn(const ManinSpace& S, uint64_t ell) {
    require(is_prime_u(ell) && S.M % ell != 0, "hecke_op_heilbronn: need ell prime, ell ∤ M");
    auto mats = heilbronn_cremona(ell);
    Mat out(S.R, S.dim, S.dim);
    std::vector<uint64_t> acc(S.dim);
    // accumulation stays below 2^64: (#mats) * (m-1)
    require((unsigned __int128)mats.size() * (S.R.m - 1) >> 63 == 0, "hecke_op: accumulator overflow");
    for (size_t j = 0; j < S.dim; ++j) {
        std::fill(acc.begin(), acc.end(), 0);
        auto [c, d] = S.p1.points[S.basis_point[j]];
        for (const HMat& h : mats) {
            long long c2 = (long long)c * h.x + (long long)d * h.z;
            long long d2 = (long long)c * h.y + (long long)d * h.w;
            const auto& row = S.enc[S.p1.index(c2, d2)];
            for (size_t k = 0; k < S.dim; ++k) acc[k] += row[k];
        }
        for (size_t k = 0; k < S.dim; ++k) out.at(k, j) = acc[k] % S.R.m;
    }
    return out;
}

// Continued-fraction expansion of a modular path into basis coordinates.
// The accumulator holds plain uint64 sums of residues; callers count emitted
// symbols against an overflow budget and reduce mod m once at the end.
namespace detail {
inline void add_ideal_path_leg(const ManinSpace& S, std::vector<uint64_t>& acc, size_t& terms,
                               long long p, long long q, int sgn) {
    // adds sgn * {oo -> p/q}; no-op for the cusp oo itself
    if (q == 0) return;
    if (q < 0) { p = -p; q = -q; }
    long long g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) { p /= g; q /= g; }
    auto emit = [&](long long hp, long long kp, long long hc, long long kc) {
        // path {hp/kp -> hc/kc}; lift [hc, hp; kc, kp] has det +-1, fix to +1
        long long det = hc * kp - hp * kc;
        long long c = kc, d = kp;
        if (det == -1) d = -d;
        else require(det == 1, "add_ideal_path_leg: step not unimodular");
        const auto& row = S.enc[S.p1.index(c, d)];
        const uint64_t m = S.R.m;
        if (sgn > 0)
            for (size_t k = 0; k < S.dim; ++k) acc[k] += row[k];
        else
            for (size_t k = 0; k < S.dim; ++k) acc[k] += row[k] ? m - row[k] : 0;
        ++terms;
    };
    // floor continued fraction of p/q, emitting one unimodular step per convergent
    long long h2 = 1, k2 = 0;  // convergent at oo
    long long h1 = 0, k1 = 0;
    long long aa = p, bb = q;
    bool first = true;
    while (bb != 0) {
        long long q0 = aa / bb;
        if ((aa % bb) != 0 && ((aa % bb < 0) != (bb < 0))) --q0;
        long long r = aa - q0 * bb;
        aa = bb;
        bb = r;
        if (first) {
            h1 = q0;
            k1 = 1;
            emit(1, 0, h1, k1);
            first = false;
        } else {
            long long h = q0 * h1 + h2, k = q0 * k1 + k2;
            emit(h1, k1, h, k);
            h2 = h1;
            k2 = k1;
            h1 = h;
            k1 = k;
        }
    }
}
}  // namespace detail

inline void add_path(const ManinSpace& S, std::vector<uint64_t>& acc, size_t& terms, long long pa,
                     long long qa, long long pb, long long qb) {
    // {a -> b} = {oo -> b} - {oo -> a}
    detail::add_ideal_path_leg(S, acc, terms, pb, qb, +1);
    detail::add_ideal_path_leg(S, acc, terms, pa, qa, -1);
}

// T_ell (ell ∤ M) or U_ell (ell | M) from the coset decomposition, converting
// each translated path back to Manin symbols by continued fractions.
inline Mat hecke_op_paths(const ManinSpace& S, uint64_t ell) {
    require(is_prime_u(ell), "hecke_op_paths: ell must be prime");
    Mat out(S.R, S.dim, S.dim);
    std::vector<uint64_t> acc(S.dim);
    for (size_t j = 0; j < S.dim; ++j) {
        std::fill(acc.begin(), acc.end(), 0);
        size_t terms = 0;
        auto [c, d] = S.p1.points[S.basis_point[j]];
        Sl2 g = lift_to_sl2z(S.M, c, d);  // path {g.b/g.d -> g.a/g.c}
        for (uint64_t u = 0; u < ell; ++u) {
            // [1, u; 0, ell] sends x to (x+u)/ell
            add_path(S, acc, terms, g.b + (long long)u * g.d, (long long)ell * g.d,
                     g.a + (long long)u * g.c, (long long)ell * g.c);
        }
        if (S.M % ell != 0) {
            // [ell, 0; 0, 1] sends x to ell*x
            add_path(S, acc, terms, (long long)ell * g.b, g.d, (long long)ell * g.a, g.c);
        }
        require((unsigned __int128)terms * (S.R.m - 1) >> 63 == 0,
                "hecke_op_paths: accumulator overflow");
        for (size_t k = 0; k < S.dim; ++k) out.at(k, j) = acc[k] % S.R.m;
    }
    return out;
}

// T_ell for ell ∤ M (Heilbronn), U_ell for ell | M (paths)
inline Mat hecke_op(const ManinSpace& S, uint64_t ell) {
    return S.M % ell == 0 ? hecke_op_paths(S, ell) : hecke_op_heilbronn(S, ell);
}

}  // namespace eisq

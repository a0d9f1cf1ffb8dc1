#pragma once

#include <stdexcept>
#include <vector>

#include "zmod.hpp"

namespace eisq {

// Truncated power series (Z/p^e)[x]/(x^K); doubles as F_p[eps]/(eps^m) when
// e = 1.  Fixed length K, coefficients low-to-high.
struct Series {
    ZmodRing R;
    size_t K = 0;
    std::vector<uint64_t> c;

    Series() = default;
    Series(const ZmodRing& ring, size_t cap) : R(ring), K(cap), c(cap, 0) {}
    Series(const ZmodRing& ring, size_t cap, std::vector<uint64_t> coeffs)
        : R(ring), K(cap), c(std::move(coeffs)) {
        c.resize(cap, 0);
        for (auto& x : c) x %= R.m;
    }
    static Series constant(const ZmodRing& R, size_t K, uint64_t a) {
        Series s(R, K);
        s.c[0] = a % R.m;
        return s;
    }
    static Series x(const ZmodRing& R, size_t K) {
        Series s(R, K);
        if (K > 1) s.c[1] = 1;
        return s;
    }

    Series add(const Series& o) const {
        Series r = *this;
        for (size_t i = 0; i < K; ++i) r.c[i] = R.add(r.c[i], o.c[i]);
        return r;
    }
    Series sub(const Series& o) const {
        Series r = *this;
        for (size_t i = 0; i < K; ++i) r.c[i] = R.sub(r.c[i], o.c[i]);
        return r;
    }
    Series mul(const Series& o) const {
        Series r(R, K);
        for (size_t i = 0; i < K; ++i) {
            if (!c[i]) continue;
            for (size_t j = 0; i + j < K; ++j) {
                if (!o.c[j]) continue;
                r.c[i + j] = R.add(r.c[i + j], R.mul(c[i], o.c[j]));
            }
        }
        return r;
    }
    Series scalar_mul(uint64_t a) const {
        Series r = *this;
        for (auto& x : r.c) x = R.mul(x, a);
        return r;
    }
    bool is_zero() const {
        for (auto x : c)
            if (x) return false;
        return true;
    }
    bool operator==(const Series& o) const { return c == o.c; }

    // multiplicative inverse; needs unit constant term
    Series inverse() const {
        if (!R.is_unit(c[0])) throw std::domain_error("Series::inverse: constant term not a unit");
        Series r(R, K);
        uint64_t i0 = R.inv(c[0]);
        r.c[0] = i0;
        for (size_t n = 1; n < K; ++n) {
            uint64_t s = 0;
            for (size_t k = 1; k <= n; ++k) s = R.add(s, R.mul(c[k], r.c[n - k]));
            r.c[n] = R.mul(R.neg(s), i0);
        }
        return r;
    }
    Series pow(uint64_t n) const {
        Series r = constant(R, K, 1), b = *this;
        while (n) {
            if (n & 1) r = r.mul(b);
            b = b.mul(b);
            n >>= 1;
        }
        return r;
    }
    // substitute: this(g(x)), g with zero constant term
    Series compose(const Series& g) const {
        if (g.c[0] != 0) throw std::domain_error("Series::compose: inner constant term must vanish");
        Series r(R, K), gp = constant(R, K, 1);
        for (size_t i = 0; i < K; ++i) {
            if (c[i]) r = r.add(gp.scalar_mul(c[i]));
            gp = gp.mul(g);
            if (gp.is_zero()) break;
        }
        return r;
    }
    // x-adic valuation (K if zero)
    size_t order() const {
        for (size_t i = 0; i < K; ++i)
            if (c[i]) return i;
        return K;
    }
};

// 2x2 matrix over Series; enough for the trace computations on rank-2 objects.
struct SeriesMat2 {
    Series a, b, c, d;

    static SeriesMat2 identity(const ZmodRing& R, size_t K) {
        return {Series::constant(R, K, 1), Series(R, K), Series(R, K), Series::constant(R, K, 1)};
    }
    SeriesMat2 mul(const SeriesMat2& o) const {
        return {a.mul(o.a).add(b.mul(o.c)), a.mul(o.b).add(b.mul(o.d)),
                c.mul(o.a).add(d.mul(o.c)), c.mul(o.b).add(d.mul(o.d))};
    }
    SeriesMat2 pow(uint64_t n) const {
        SeriesMat2 r = identity(a.R, a.K), base = *this;
        while (n) {
            if (n & 1) r = r.mul(base);
            base = base.mul(base);
            n >>= 1;
        }
        return r;
    }
    Series trace() const { return a.add(d); }
    Series det() const { return a.mul(d).sub(b.mul(c)); }
};

}  // namespace eisq

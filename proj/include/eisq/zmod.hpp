#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eisq {

// Arithmetic in Z/p^e for an odd prime p, with p^e < 2^63 so that sums of two
// residues never overflow and products fit in unsigned __int128.  Residues are
// plain uint64_t in [0, m); the ring object carries the modulus and a table of
// p-powers so valuations are cheap.
struct ZmodRing {
    uint64_t p = 0;
    unsigned e = 0;
    uint64_t m = 0;        // p^e
    uint64_t ppow[64];     // ppow[k] = p^k, k <= e

    ZmodRing() = default;
    ZmodRing(uint64_t p_, unsigned e_) : p(p_), e(e_) {
        if (p < 3 || e == 0 || e > 40)
            throw std::invalid_argument("ZmodRing: need odd prime p >= 3, 1 <= e <= 40");
        uint64_t v = 1;
        for (unsigned k = 0; k <= e; ++k) {
            ppow[k] = v;
            if (k < e) {
                if (v > (uint64_t(1) << 62) / p)
                    throw std::invalid_argument("ZmodRing: p^e exceeds 2^63");
                v *= p;
            }
        }
        m = ppow[e];
    }

    uint64_t reduce(long long x) const {
        long long r = x % (long long)m;
        if (r < 0) r += (long long)m;
        return (uint64_t)r;
    }
    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= m ? s - m : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + m - b; }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : m - a; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return (uint64_t)((unsigned __int128)a * b % m);
    }
    uint64_t pow(uint64_t a, uint64_t n) const {
        uint64_t r = 1 % m;
        while (n) {
            if (n & 1) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }

    // p-adic valuation clamped to e; val(0) = e.
    unsigned val(uint64_t a) const {
        if (a == 0) return e;
        unsigned v = 0;
        while (a % p == 0) { a /= p; ++v; }
        return v;
    }
    bool is_unit(uint64_t a) const { return a % p != 0; }

    // Inverse of a unit: a^(phi(p^e)-1) = a^(p^e - p^(e-1) - 1).
    uint64_t inv(uint64_t a) const {
        if (!is_unit(a)) throw std::domain_error("ZmodRing::inv: non-unit " + std::to_string(a));
        return pow(a, m - ppow[e - 1] - 1);
    }

    // Exact division: b = p^v * u with u a unit; requires p^v | a.
    uint64_t divexact(uint64_t a, uint64_t b) const {
        if (b == 0) throw std::domain_error("ZmodRing::divexact: division by zero");
        unsigned v = val(b);
        if (v) {
            if (a % ppow[v] != 0)
                throw std::domain_error("ZmodRing::divexact: not divisible");
            a /= ppow[v];
            b /= ppow[v];
        }
        // NB the quotient is only determined mod p^(e-v); callers that care
        // about the lost digits must track precision themselves.
        return mul(a, inv(b));
    }

    // Teichmueller representative of a (unit): the limit of a^(p^k).
    uint64_t teichmuller(uint64_t a) const {
        uint64_t t = a % m, prev;
        do {
            prev = t;
            t = pow(t, p);
        } while (t != prev);
        return t;
    }

    // Primitive n-th root of unity for n | p-1.
    uint64_t root_of_unity(uint64_t n) const {
        if (n == 0 || (p - 1) % n != 0)
            throw std::invalid_argument("root_of_unity: n must divide p-1");
        uint64_t primes[16];
        int np = 0;
        uint64_t n1 = p - 1;
        for (uint64_t q = 2; q * q <= n1; ++q)
            if (n1 % q == 0) {
                primes[np++] = q;
                while (n1 % q == 0) n1 /= q;
            }
        if (n1 > 1) primes[np++] = n1;
        for (uint64_t g = 2; g < p; ++g) {
            bool gen = true;
            for (int i = 0; i < np && gen; ++i)
                if (powmod_p(g, (p - 1) / primes[i]) == 1) gen = false;
            if (gen) return pow(teichmuller(g), (p - 1) / n);
        }
        throw std::logic_error("root_of_unity: no generator found");
    }

    bool operator==(const ZmodRing& o) const { return p == o.p && e == o.e; }

  private:
    uint64_t powmod_p(uint64_t a, uint64_t n) const {
        uint64_t r = 1;
        a %= p;
        while (n) {
            if (n & 1) r = r * a % p;
            a = a * a % p;
            n >>= 1;
        }
        return r;
    }
};

}  // namespace eisq

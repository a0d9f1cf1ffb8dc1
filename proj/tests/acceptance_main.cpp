// Acceptance gate.  One line per criterion; every tolerance and runtime wall
// is pinned here, in code.  Exit status 0 iff all gating criteria pass (the
// large-level stretch instance is reported but never gates).

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "eisq/cohomology.hpp"
#include "eisq/group_ring.hpp"
#include "eisq/hecke_local.hpp"
#include "eisq/local_galois.hpp"
#include "eisq/pseudorep.hpp"

using namespace eisq;

namespace {

using clk = std::chrono::steady_clock;

double secs_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

int failures = 0;

void line(const std::string& name, bool pass, bool gating, const std::string& detail) {
    std::printf("[%s] %-28s %s\n", pass ? "PASS" : (gating ? "FAIL" : "WARN"), name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass && gating) ++failures;
}

// criterion 1: presentation of the plus part of Z_p[Z/p^r]
void criterion_lambda_plus() {
    const std::pair<uint64_t, unsigned> inst[] = {{5, 1}, {7, 1}, {11, 1}, {5, 2}};
    bool ok = true;
    double worst = 0;
    std::ostringstream d;
    for (auto [p, r] : inst) {
        auto t0 = clk::now();
        ZmodRing R(p, 12);
        DeltaGroup D(p, r);
        auto lam = check_lamplus_presentation(R, D);
        PadicPoly psi = psi_poly(R, r);
        double dt = secs_since(t0);
        worst = std::max(worst, dt);
        bool inst_ok = (int)psi.c.size() - 1 == (int)((D.n - 1) / 2) && lam.ok() &&
                       lam.psi0_valuation == r && lam.power_rank == (int)((D.n + 1) / 2) &&
                       dt < 1.0;
        ok = ok && inst_ok;
        if (!inst_ok) d << " (" << p << "," << r << ") failed;";
    }
    std::ostringstream s;
    s << "deg Psi, v(Psi(0)) = r, annihilation, power basis at 4 instances; max "
      << std::fixed << worst << "s < 1s" << d.str();
    line("1: plus-part presentation", ok, true, s.str());
}

// independent check of the Laurent identity -l^N f = (l^(N-1)-1)(l^(N+1)-1)
// over Z for all N <= 200, with f = tr(M) - tr(M^N), M = [[1+x,1],[x,1]],
// x = (l-1)^2 / l.  M^N is maintained incrementally; nothing here shares code
// with the local-ring suite.
bool laurent_sweep(unsigned bound) {
    using intpoly::Poly;
    using intpoly::add;
    using intpoly::mul;
    using intpoly::sub;
    using intpoly::trim;
    const Poly Ma{1, 1}, Mb{1}, Mc{0, 1}, Md{1};  // [[1+x, 1], [x, 1]]
    Poly Pa{1}, Pb, Pc, Pd{1};
    const Poly lm1sq{1, -2, 1};  // (l-1)^2
    for (unsigned N = 1; N <= bound; ++N) {
        Poly na = add(mul(Pa, Ma), mul(Pb, Mc));
        Poly nb = add(mul(Pa, Mb), mul(Pb, Md));
        Poly nc = add(mul(Pc, Ma), mul(Pd, Mc));
        Poly nd = add(mul(Pc, Mb), mul(Pd, Md));
        Pa = na;
        Pb = nb;
        Pc = nc;
        Pd = nd;
        Poly f = sub(Poly{2, 1}, add(Pa, Pd));  // tr M - tr M^N, degree <= N
        // lhs = -sum_k f_k (l-1)^(2k) l^(N-k), a polynomial since deg f <= N
        Poly lhs;
        Poly pw{1};  // (l-1)^(2k)
        for (size_t k = 0; k < f.size(); ++k) {
            if (k) pw = mul(pw, lm1sq);
            if (f[k] == 0) continue;
            Poly term(N - k, 0);  // l^(N-k) shift
            for (const auto& c : pw) term.push_back(-f[k] * c);
            lhs = add(lhs, term);
        }
        Poly rhs(2 * N + 1, 0);
        rhs[0] += 1;
        rhs[N - 1] -= 1;
        rhs[N + 1] -= 1;
        rhs[2 * N] += 1;
        trim(lhs);
        trim(rhs);
        if (lhs != rhs) return false;
    }
    return true;
}

void criterion_local() {
    bool ok = true;
    std::ostringstream d;
    for (auto [p, N] : {std::pair<uint64_t, uint64_t>{5, 19}, {7, 13}}) {
        auto t0 = clk::now();
        auto rep = verify_local_suite(p, N, 1, 12, 64);
        double dt = secs_since(t0);
        bool inst_ok = rep.ok() && dt < 5.0;
        ok = ok && inst_ok;
        d << "(" << p << "," << N << ") " << (inst_ok ? "ok" : "FAIL") << " " << std::fixed
          << dt << "s < 5s; ";
    }
    auto t0 = clk::now();
    bool sweep = laurent_sweep(200);
    ok = ok && sweep;
    d << "Laurent identity over Z for N <= 200 " << (sweep ? "ok" : "FAIL") << " ("
      << std::fixed << secs_since(t0) << "s)";
    line("2: local ring at N", ok, true, d.str());
}

void criterion_massey() {
    bool ok = true;
    std::ostringstream d;
    for (auto [p, N, expect] : {std::tuple<uint64_t, uint64_t, bool>{5, 19, true},
                                {7, 13, true},
                                {5, 149, false}}) {
        auto t0 = clk::now();
        auto rep = verify_obstruction_suite(p, N);
        double dt = secs_since(t0);
        bool inst_ok = rep.ok(expect) && dt < 30.0;
        ok = ok && inst_ok;
        d << "(" << p << "," << N << ") " << (expect ? "obstructed" : "control") << " "
          << (inst_ok ? "ok" : "FAIL") << " " << std::fixed << dt << "s < 30s; ";
    }
    line("3: massey obstruction", ok, true, d.str());
}

bool congruences_all(const TheoremReport& rep) {
    if (rep.congruences.empty()) return false;
    for (auto& [ell, pass] : rep.congruences)
        if (!pass) return false;
    return true;
}

void criterion_hecke() {
    bool ok = true;
    std::ostringstream d;

    {
        auto t0 = clk::now();
        auto rep = verify_main_theorem(5, 19);
        double dt = secs_since(t0);
        bool inst_ok = rep.all_pass() && rep.cuspidal_dim == 22 && rep.rank == 3 &&
                       rep.generator_ell != 0 && rep.generator_ell <= 20 &&
                       rep.charpoly == std::vector<uint64_t>{5, 5, 1} && congruences_all(rep) &&
                       rep.eta_valuation == 1 && rep.i2_valuation == 1 &&
                       rep.eta_valuation == rep.i2_valuation && rep.boundary_depth == 1 &&
                       dt < 120.0;
        ok = ok && inst_ok;
        d << "(5,19) dim 22 rank 3 charpoly x(x^2+5x+5) eta=#J/J^2=5 "
          << (inst_ok ? "ok" : "FAIL") << " " << std::fixed << dt << "s < 120s; ";
    }
    {
        auto t0 = clk::now();
        auto rep = verify_main_theorem(7, 13);
        double dt = secs_since(t0);
        bool inst_ok = rep.all_pass() && rep.cuspidal_dim == 8 && rep.rank == 4 &&
                       rep.charpoly == std::vector<uint64_t>{7, 14, 7, 1} &&
                       congruences_all(rep) && rep.eta_valuation == 1 &&
                       rep.i2_valuation == 1 && dt < 120.0;
        ok = ok && inst_ok;
        d << "(7,13) dim 8 rank 4 charpoly x(x^3+7x^2+14x+7) eta=7 "
          << (inst_ok ? "ok" : "FAIL") << " " << std::fixed << dt << "s < 120s";
    }
    line("4: hecke algebra", ok, true, d.str());
}

void stretch_hecke() {
    auto t0 = clk::now();
    // large level: the auto-tuned options (short cutting family, e = 4) keep
    // the dense operators at ambient dim ~5550 from exhausting memory
    auto rep = verify_main_theorem(5, 149, default_verify_options(5, 149));
    double dt = secs_since(t0);
    bool ok = rep.all_pass() && rep.rank == 13 && rep.eta_valuation == 2 &&
              rep.i2_valuation == 2;
    std::ostringstream d;
    d << "(5,149) r=2 rank 13 eta=25 " << (ok ? "ok" : "FAIL") << " " << std::fixed << dt
      << "s (non-gating)";
    line("stretch: r = 2 instance", ok, false, d.str());
}

// criterion 5: the always-on property checks, compact versions
bool prop_pseudorep() {
    ZmodRing R(5, 8);
    auto G = FiniteGroupModel::dihedral(4);
    uint64_t z = R.pow(R.teichmuller(2), 1);  // 2 generates (Z/5)*, order 4
    std::mt19937_64 rng(7);
    uint64_t qa, qb, qc, qd, det;
    do {
        qa = rng() % R.m;
        qb = rng() % R.m;
        qc = rng() % R.m;
        qd = rng() % R.m;
        det = R.sub(R.mul(qa, qd), R.mul(qb, qc));
    } while (!R.is_unit(det));
    uint64_t di = R.inv(det);
    auto mul2 = [&](const std::array<uint64_t, 4>& x, const std::array<uint64_t, 4>& y) {
        return std::array<uint64_t, 4>{
            R.add(R.mul(x[0], y[0]), R.mul(x[1], y[2])),
            R.add(R.mul(x[0], y[1]), R.mul(x[1], y[3])),
            R.add(R.mul(x[2], y[0]), R.mul(x[3], y[2])),
            R.add(R.mul(x[2], y[1]), R.mul(x[3], y[3]))};
    };
    std::array<uint64_t, 4> Q{qa, qb, qc, qd};
    std::array<uint64_t, 4> Qi{R.mul(qd, di), R.mul(R.neg(qb), di), R.mul(R.neg(qc), di),
                               R.mul(qa, di)};
    std::array<uint64_t, 4> T = mul2(mul2(Q, {z, 0, 0, R.inv(z)}), Qi);
    std::array<uint64_t, 4> S = mul2(mul2(Q, {0, 1, 1, 0}), Qi);
    TraceDet<ZElem> P;
    P.G = &G;
    P.one = ZElem(R, 1);
    for (uint32_t g = 0; g < G.n; ++g) {
        std::array<uint64_t, 4> m{1, 0, 0, 1};
        for (uint64_t i = 0; i < G.t_exp(g); ++i) m = mul2(m, T);
        for (uint64_t i = 0; i < G.s_exp(g); ++i) m = mul2(m, S);
        P.T.push_back(ZElem(R, R.add(m[0], m[3])));
        P.D.push_back(ZElem(R, R.sub(R.mul(m[0], m[3]), R.mul(m[1], m[2]))));
    }
    return check_pseudorep(P).ok();
}

bool prop_gma() {
    ZmodRing R(5, 2);
    for (size_t n = 1; n <= 6; ++n) {
        GmaAlgebra<Series> E{Series::constant(R, n, 1), Series::x(R, n), Series::x(R, n),
                             Series::x(R, n)};
        std::mt19937_64 rng(50 + n);
        std::vector<GmaElem<Series>> span;
        auto rs = [&] {
            Series s(R, n);
            for (auto& c : s.c) c = rng() % R.m;
            return s;
        };
        span.push_back({E.one, Series(R, n), Series(R, n), E.one});
        for (int i = 0; i < 4; ++i) span.push_back({rs(), rs(), rs(), rs()});
        if (!gma_check_axioms(E, span)) return false;
        for (const auto& x : span)
            if (!gma_cayley_hamilton(E, x)) return false;
    }
    return true;
}

bool prop_cochains() {
    GammaQuotient Ga(5, 19);
    ZmodRing Fp(5, 1);
    std::mt19937_64 rng(11);
    Cochain1 a(Ga, CoeffModule(Fp, 1)), b(Ga, CoeffModule(Fp, 0));
    for (uint32_t g = 1; g < Ga.G.n; ++g) {
        a.v[g] = rng() % 5;
        b.v[g] = rng() % 5;
    }
    if (!is_2cocycle(d1(a)) || !is_2cocycle(d1(b))) return false;
    Cochain2 da = d1(a), db = d1(b), ab = cup(a, b);
    for (int t = 0; t < 300000; ++t) {
        uint32_t g = rng() % Ga.G.n, h = rng() % Ga.G.n, k = rng() % Ga.G.n;
        uint64_t lhs = d2_eval(ab, g, h, k);
        uint64_t rhs = Fp.sub(cup21_eval(da, b, g, h, k), cup12_eval(a, db, g, h, k));
        if (lhs != rhs) return false;
    }
    return true;
}

bool prop_commute() {
    ZmodRing R7(7, 10);
    ManinSpace S(169, +1, R7);
    Mat T2 = hecke_op(S, 2), T3 = hecke_op(S, 3), U13 = hecke_op(S, 13);
    if (!(T2.mul(T3) == T3.mul(T2))) return false;
    if (!(T2.mul(U13) == U13.mul(T2))) return false;
    if (!(T3.mul(U13) == U13.mul(T3))) return false;
    ZmodRing R5(5, 12);
    ManinSpace S19(361, +1, R5);
    Mat A = hecke_op(S19, 2), B = hecke_op(S19, 3);
    return A.mul(B) == B.mul(A);
}

bool prop_precision() {
    auto a = verify_main_theorem(5, 19);
    VerifyOptions opt;
    opt.e = 16;
    auto b = verify_main_theorem(5, 19, opt);
    return a.all_pass() && b.all_pass() && a.rank == b.rank &&
           a.eta_valuation == b.eta_valuation && a.i2_valuation == b.i2_valuation &&
           a.boundary_depth == b.boundary_depth;
}

void criterion_properties() {
    auto t0 = clk::now();
    bool pr = prop_pseudorep();
    bool gm = prop_gma();
    bool co = prop_cochains();
    bool cm = prop_commute();
    bool pe = prop_precision();
    std::ostringstream d;
    d << "pseudorep " << (pr ? "ok" : "FAIL") << ", gma " << (gm ? "ok" : "FAIL")
      << ", cochains " << (co ? "ok" : "FAIL") << ", commutativity " << (cm ? "ok" : "FAIL")
      << ", precision e->e+4 " << (pe ? "ok" : "FAIL") << " (" << std::fixed
      << secs_since(t0) << "s)";
    line("5: property suites", pr && gm && co && cm && pe, true, d.str());
}

}  // namespace

int main() {
    std::printf("acceptance gate, pinned tolerances\n");
    auto t0 = clk::now();
    criterion_lambda_plus();
    criterion_local();
    criterion_massey();
    criterion_hecke();
    criterion_properties();
    stretch_hecke();
    std::printf("%s (%.1fs total)\n",
                failures == 0 ? "ACCEPTANCE: ALL GATES PASS"
                              : "ACCEPTANCE: GATING FAILURES PRESENT",
                secs_since(t0));
    return failures == 0 ? 0 : 1;
}

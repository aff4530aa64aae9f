// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "common.hpp"
#include "treecochain/cusp.hpp"

using namespace tc;
using namespace tc::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

CycloRat Z(const ScalarRing& R, i128 n) { return CycloRat::from_int(R, n); }

i128 norm(const Field& F, const Poly& p) { return ipow(F.q(), p.deg()); }

// eps_i = (-1)^deg p_i for every i
bool is_hodge(const Level& L, const EpsVector& e) {
    for (int i = 0; i < L.s(); ++i)
        if (e.signs[i] != (L.primes[i].deg() % 2 ? -1 : 1)) return false;
    return true;
}

i128 expect_N(const Field& F, const Level& L, const EpsVector& e) {
    i128 N = 1;
    for (int i = 0; i < L.s(); ++i) N *= 1 + e.signs[i] * norm(F, L.primes[i]);
    return N;
}

i128 expect_nu(const Field& F, const Level& L, const EpsVector& e) { return is_hodge(L, e) ? 1 : F.q() + 1; }

i128 gcd_abs(i128 a, i128 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::vector<Level> q3_levels(const Field& F) {
    return {lvl(F, {"T"}), lvl(F, {"T", "T+1"}), lvl(F, {"T", "T+1", "T^2+1"})};
}

// every square-free n with s <= 3 and deg p_i <= 2
std::vector<Level> sweep_levels(const Field& F) {
    auto irr = primes_up_to(F, 2);
    std::vector<Level> out;
    const unsigned n = static_cast<unsigned>(irr.size());
    for (unsigned S = 1; S < (1u << n); ++S) {
        if (__builtin_popcount(S) > 3) continue;
        std::vector<Poly> ps;
        for (unsigned i = 0; i < n; ++i)
            if (S >> i & 1) ps.push_back(irr[i]);
        out.push_back(make_level(F, ps));
    }
    return out;
}

std::vector<std::pair<int, int>> ell_powers(int q, int bound) {
    std::vector<std::pair<int, int>> out;
    for (int ell = 2; ell <= bound; ++ell) {
        if (!is_prime_int(ell) || (q * (q - 1)) % ell == 0) continue;
        int r = 1;
        for (long long v = ell; v <= bound; v *= ell, ++r) out.push_back({ell, r});
    }
    return out;
}

Outcome crit1() {
    Outcome o;
    const int D = 8;
    for (int q : {2, 3, 4, 5}) {
        auto t0 = Clock::now();
        auto F = field(q);
        auto E = etilde_fourier(F, ScalarRing::exact_ring(F->p()), D);
        std::mt19937_64 rng(1000 + q);
        int mismatch = 0, skipped = 0;
        int n = sample_edges(*F, rng, 500, -D, D + 2, [&](const TreeEdge& e) {
            if (cochain::eval(E, e) != Z(E.ring(), etilde_closed(*F, e))) ++mismatch;
        }, &skipped);
        double t = seconds_since(t0);
        o.require(n == 500 && mismatch == 0, "q=" + std::to_string(q) + " mismatch");
        o.require(t < 60, "q=" + std::to_string(q) + " too slow");
        o.detail << "q=" << q << ": " << n << " edges, " << mismatch << " mismatches, " << skipped << " skipped, "
                 << std::fixed;
        o.detail.precision(2);
        o.detail << t << "s; ";
    }
    return o;
}

Outcome crit2() {
    Outcome o;
    auto t0 = Clock::now();
    auto F = field(3);
    auto R = ScalarRing::exact_ring(3);
    const int D = 8;
    auto check = [&](const FourierData& f, const std::string& tag, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        int bad = 0;
        int n = sample_edges(*F, rng, 200, -D, D + 2, [&](const TreeEdge& e) {
            auto v = cochain::eval(f, e);
            CycloRat s(R);
            for (const auto& x : tree::incoming_neighbors(*F, e)) s += cochain::eval(f, x);
            if (s != v) ++bad;
        });
        o.require(n == 200 && bad == 0, tag);
        return n;
    };
    int total = check(etilde_fourier(F, R, D), "Etilde", 2001), objects = 1;
    for (const auto& L : q3_levels(*F))
        for (const auto& e : all_eps(L.s())) {
            total += check(build_E_eps(F, R, L, e, D), poly::str(*F, L.n) + " " + eps_str(e), 2002 + objects);
            ++objects;
        }
    double t = seconds_since(t0);
    o.require(t < 120, "runtime");
    o.detail << objects << " cochains, " << total << " edges, " << t << "s";
    return o;
}

Outcome crit3() {
    Outcome o;
    int checked = 0;
    for (int q : {2, 3, 4, 5}) {
        auto F = field(q);
        auto R = ScalarRing::exact_ring(F->p());
        auto closed = closed_etilde(*F, R);
        const int e = F->e();
        o.require(cochain::forward_star(*F, R, closed, poly::one()) == CycloRat::rational(R, 1 - q * q, e),
                  "star(1) q=" + std::to_string(q));
        o.require(cochain::forward_constant(*F, R, closed, 0) == Z(R, q), "f0(1) q=" + std::to_string(q));
        const int maxdeg = 4;
        auto data = etilde_fourier(F, R, maxdeg);
        for (int d = 0; d <= maxdeg; ++d)
            for (const auto& m : poly::monics_of_degree(*F, d)) {
                auto want = CycloRat::rational(R, (1 - q * q) * static_cast<i128>(poly::sigma(*F, m)), e * (1 + d));
                o.require(cochain::forward_star(*F, R, closed, m) == want, "forward " + poly::str(*F, m));
                o.require(data.star(m) == want, "stored " + poly::str(*F, m));
                ++checked;
            }
    }
    o.detail << checked << " coefficients, deg m <= 4, q = 2..5";
    return o;
}

Outcome crit4() {
    Outcome o;
    int checks = 0;
    for (int q : {2, 3, 4, 5}) {
        auto F = field(q);
        auto R = ScalarRing::exact_ring(F->p());
        const int D = q == 5 ? 4 : 6;
        auto E = etilde_fourier(F, R, D);
        std::vector<std::pair<std::string, FourierData>> objs{{"Etilde", E}};
        auto L = lvl(*F, {"T", "T+1"});
        for (const auto& e : all_eps(2)) objs.push_back({eps_str(e), build_E_eps(F, R, L, e, D)});
        for (const auto& [tag, f] : objs)
            for (const auto& p : primes_up_to(*F, 3)) {
                if (p.deg() > D || poly::divides(*F, p, f.level())) continue;
                auto lhs = cochain::apply_T(f, p);
                auto rhs = cochain::scale(cochain::truncate(f, D - p.deg()), Z(R, norm(*F, p) + 1));
                o.require(lhs == rhs, "q=" + std::to_string(q) + " " + tag + " T_" + poly::str(*F, p));
                ++checks;
            }
    }
    o.detail << checks << " (cochain, prime) pairs over q=2..5, deg p <= 3";
    return o;
}

Outcome crit5() {
    Outcome o;
    auto F = field(3);
    auto R = ScalarRing::exact_ring(3);
    int sym = 0, pts = 0;
    std::mt19937_64 rng(5005);
    for (const auto& L : q3_levels(*F))
        for (const auto& e : all_eps(L.s())) {
            auto c = e_eps_combo(*F, L, e);
            auto f = build_E_eps(F, R, L, e, 8);
            auto ev = cochain::evaluator(f);
            for (int i = 0; i < L.s(); ++i) {
                o.require(combo_equal(combo_apply_W(*F, c, 1u << i), combo_scale(c, e.signs[i])), "symbolic");
                ++sym;
                auto m0 = cochain::w_matrix(*F, L.n, L.primes[i], 0), m1 = cochain::w_matrix(*F, L.n, L.primes[i], 1);
                o.require(!(m0 == m1) && cochain::is_w_matrix(*F, m0, L.n, L.primes[i]) &&
                              cochain::is_w_matrix(*F, m1, L.n, L.primes[i]),
                          "matrices");
                auto w0 = cochain::apply_W_pointwise(F, ev, m0), w1 = cochain::apply_W_pointwise(F, ev, m1);
                pts += sample_edges(*F, rng, 20, -4, 6, [&](const TreeEdge& x) {
                    auto a = w0(x);
                    o.require(a == w1(x), "variants differ");
                    o.require(a == ev(x).mul_int(e.signs[i]), "eigenvalue");
                });
            }
        }
    o.detail << sym << " symbolic toggles, " << pts << " edge checks with two matrices (q=3, s<=3)";
    return o;
}

Outcome crit6() {
    Outcome o;
    auto F = field(3);
    auto R = ScalarRing::exact_ring(3);
    const int q = 3, D = 8;
    int total = 0;
    std::mt19937_64 rng(6006);
    auto check = [&](const FourierData& f, i128 want, const std::string& tag) {
        int n = sample_edges(*F, rng, 200, -D, D + 2, [&](const TreeEdge& e) {
            o.require(cochain::eval(f, e) + cochain::eval(f, tree::bar(e)) == Z(R, want), tag);
        });
        o.require(n == 200, tag + " sample");
        total += n;
    };
    check(etilde_fourier(F, R, D), q + 1, "Etilde");
    for (const auto& L : q3_levels(*F))
        for (const auto& e : all_eps(L.s())) {
            i128 prod = 1;
            for (int s : e.signs) prod *= 1 + s;
            i128 want = (q + 1) * prod / expect_nu(*F, L, e);
            o.require((want == 0) == !e.is_one(), "harmonic iff eps != 1");
            check(build_E_eps(F, R, L, e, D), want, poly::str(*F, L.n) + " " + eps_str(e));
        }
    o.detail << total << " edge pairs";
    return o;
}

Outcome crit7() {
    Outcome o;
    int krule = 0, lowered = 0, pts = 0;
    std::mt19937_64 rng(7007);
    for (int q : {2, 3}) {
        auto F = field(q);
        auto R = ScalarRing::exact_ring(q);
        auto E = etilde_fourier(F, R, 6);
        for (const auto& p : primes_up_to(*F, 2)) {
            auto K = cochain::apply_K(E, p);
            for (std::size_t i = 0; i < K.index().size(); ++i) {
                bool div = poly::divides(*F, p, K.index().poly(i));
                o.require(K.star_at(i).is_zero() == div, "K rule");
                if (!div) o.require(K.star_at(i) == E.star_at(i), "K keeps coprime coefficients");
                ++krule;
            }
            auto f = cochain::apply_B(cochain::truncate(E, 6 - p.deg()), p);
            auto g = cochain::level_lower(f, p);
            o.require(g == cochain::truncate(E, 6 - p.deg()), "g = Etilde");
            o.require(cochain::apply_B(g, p) == f, "g|B = f");
            auto fw = cochain::apply_W_pointwise(F, cochain::evaluator(f), cochain::w_matrix(*F, p, p, 0));
            auto gev = cochain::evaluator(g);
            pts += sample_edges(*F, rng, 25, -3, 4, [&](const TreeEdge& e) { o.require(fw(e) == gev(e), "f|W = g"); });
            ++lowered;
        }
    }
    o.detail << krule << " K coefficients, " << lowered << " level lowerings, " << pts << " f|W = g edge checks";
    return o;
}

Outcome crit8() {
    Outcome o;
    {
        // part (1): q = 3, n = p q with deg q = 2
        auto F = field(3);
        auto R = ScalarRing::exact_ring(3);
        for (const char* p1 : {"T", "T+1", "T+2"})
            for (const char* p2 : {"T^2+1", "T^2+T+2", "T^2+2*T+2"}) {
                auto L = lvl(*F, {p1, p2});
                auto e = eps_H_s(L);
                auto c = e_eps_combo(*F, L, e);
                o.require(combo_equal(combo_apply_U(*F, c, 1), c), "symbolic U fixes E");
                o.require(cochain::apply_U(build_E_eps(F, R, L, e, 6), L.primes[1]) == build_E_eps(F, R, L, e, 4),
                          "Fourier U fixes E");
                o.require(trace_down(*F, c, 1).coeffs.empty(), "trace vanishes");
            }
        o.detail << "q=3: 9 levels E|U = E and Tr E = 0; ";
    }
    {
        // part (2): q = 5, deg p_s = 3, ell = 3 in Z/9
        auto F = field(5);
        int levels = 0;
        for (const char* p1 : {"T", "T+1"})
            for (const char* p2 : {"T^3+T+1", "T^3+T^2+2"}) {
                auto L = lvl(*F, {p1, p2});
                auto e = eps_H_s(L);
                auto E = build_E_eps(F, ScalarRing::exact_ring(5), L, e, 5);
                auto U = cochain::apply_U(E, L.primes[1]);
                auto X = cochain::add(U, cochain::truncate(E, 2));
                auto Xm = cochain::reduce_mod(X, 9);
                for (i128 a : {3, 6}) {
                    auto aX = cochain::scale(Xm, Z(Xm.ring(), a));
                    o.require(aX == cochain::zero_like(Xm), "a(E|U + E) = 0");
                }
                o.require(!(Xm == cochain::zero_like(Xm)), "non-vacuous");
                auto c = e_eps_combo(*F, L, e);
                o.require(combo_vanishes_mod(combo_add(combo_apply_U(*F, c, 1), c), 3), "symbolic mod 3");
                ++levels;
            }
        o.detail << "q=5: " << levels << " levels a(E|U) = -aE for a in (Z/9)[3]";
    }
    return o;
}

Outcome crit9() {
    Outcome o;
    auto t0 = Clock::now();
    long certs = 0;
    for (int q : {2, 3, 4}) {
        auto F = field(q);
        auto R = ScalarRing::exact_ring(F->p());
        auto ells = ell_powers(q, 81);
        for (const auto& L : sweep_levels(*F))
            for (const auto& e : all_eps(L.s())) {
                auto E = build_E_eps(F, R, L, e, order_depth(L));
                i128 Nnu = expect_N(*F, L, e) / expect_nu(*F, L, e);
                for (auto [ell, r] : ells) {
                    auto c = eisenstein_order_from(E, L, e, ell, r);
                    i128 want = e.is_one() ? 1 : gcd_abs(ipow(ell, r), Nnu);
                    o.require(c.order == want, "order " + poly::str(*F, L.n) + " " + eps_str(e));
                    o.require(c.ok(), "certificate " + poly::str(*F, L.n) + " " + eps_str(e));
                    ++certs;
                }
            }
    }
    double t = seconds_since(t0);
    o.require(t < 300, "runtime");
    o.detail << certs << " certificates, " << t << "s";
    return o;
}

Outcome crit10() {
    Outcome o;
    int rows = 0, levels = 0;
    for (int q : {2, 3, 4}) {
        auto F = field(q);
        for (const auto& L : sweep_levels(*F)) {
            auto rep = cusp_group(*F, L);
            for (const auto& row : rep.rows) {
                o.require(row.expansion_ok, "div expansion");
                o.require(row.w_ok, "W eigen");
                o.require(row.sandwich_ok, "sandwich " + poly::str(*F, L.n) + " " + eps_str(row.eps));
                ++rows;
            }
            ++levels;
        }
    }
    o.detail << levels << " levels, " << rows << " (level, eps) rows";
    return o;
}

Outcome crit11() {
    Outcome o;
    int levels = 0;
    for (int q : {2, 3, 4}) {
        auto F = field(q);
        for (const auto& L : sweep_levels(*F)) {
            auto rep = exponent_check(*F, L);
            o.require(rep.divides, "exponent divides rho at " + poly::str(*F, L.n));
            o.require(rep.p_part_trivial, "p-part");
            o.require(rep.pullbacks_ok && rep.identities_ok, "pullbacks");
            ++levels;
        }
    }
    o.detail << levels << " levels";
    return o;
}

Outcome crit12() {
    Outcome o;
    int total = 0, fallback = 0;  // fallback: edges handled by the explicit construction
    for (int q : {2, 3, 4, 5}) {
        auto F = field(q);
        auto quad = primes_up_to(*F, 2).back();
        std::vector<Poly> levels{P(*F, "T"), P(*F, "T^2+T"), poly::mul(*F, P(*F, "T^2+T"), quad)};
        std::mt19937_64 rng(12000 + q);
        for (const auto& n : levels)
            for (bool search : {true, false})
                for (int t = 0; t < 200; ++t) {
                    auto e = tree::random_edge(*F, rng, -6, 8, false);
                    auto res = tree::reduce_to_positive(*F, e, n, search);
                    o.require(gl2::in_gamma0(*F, res.gamma, n), "membership");
                    auto img = tree::act(*F, res.gamma, e);
                    o.require(img == res.edge && img.positive, "orientation");
                    fallback += !search || res.used_fallback;
                    ++total;
                }
    }
    o.detail << total << " negative edges (" << fallback << " via explicit construction)";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"dual evaluation of Etilde", crit1},
        {"pseudo-harmonic flow", crit2},
        {"Fourier round trip", crit3},
        {"Hecke eigenvalues", crit4},
        {"Atkin-Lehner eigenvalues", crit5},
        {"pairing constants", crit6},
        {"annihilator and level lowering", crit7},
        {"trace and U identities", crit8},
        {"Eisenstein orders", crit9},
        {"cusp divisor sandwich", crit10},
        {"exponent bound", crit11},
        {"Gamma_0(n) positivization", crit12},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail << "exception: " << ex.what();
        }
        all = all && o.pass;
        std::printf("%s %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.str().c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}

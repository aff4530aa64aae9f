#include "treecochain/eisenstein.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tc {

Level make_level(const Field& F, const std::vector<Poly>& primes) {
    Level L{poly::one(), {}};
    for (const auto& p : primes) {
        if (p.deg() < 1 || p.lead() != 1) throw std::invalid_argument("level factors must be monic of positive degree");
        if (!poly::is_irreducible(F, p)) throw std::invalid_argument("level factor " + poly::str(F, p) + " is reducible");
        if (std::find(L.primes.begin(), L.primes.end(), p) != L.primes.end())
            throw std::invalid_argument("repeated prime " + poly::str(F, p) + " in level");
        L.primes.push_back(p);
        L.n = poly::mul(F, L.n, p);
    }
    return L;
}

Level level_of(const Field& F, const Poly& n) {
    if (n.is_zero() || n.lead() != 1) throw std::invalid_argument("level must be monic");
    std::vector<Poly> ps;
    for (const auto& [p, e] : poly::factor(F, n)) {
        if (e > 1) throw std::invalid_argument("level must be square-free");
        ps.push_back(p);
    }
    return make_level(F, ps);
}

Poly divisor(const Field& F, const Level& L, unsigned mask) {
    Poly d = poly::one();
    for (int i = 0; i < L.s(); ++i)
        if (mask >> i & 1u) d = poly::mul(F, d, L.primes[i]);
    return d;
}

unsigned mask_of(const Field& F, const Level& L, const Poly& d) {
    unsigned m = 0;
    Poly rest = d;
    for (int i = 0; i < L.s(); ++i)
        if (poly::divides(F, L.primes[i], rest)) {
            m |= 1u << i;
            rest = poly::div_exact(F, rest, L.primes[i]);
        }
    if (!rest.is_one()) throw std::invalid_argument(poly::str(F, d) + " is not a monic divisor of the level");
    return m;
}

int EpsVector::eps_d(unsigned mask) const {
    int r = 1;
    for (std::size_t i = 0; i < signs.size(); ++i)
        if (mask >> i & 1u) r *= signs[i];
    return r;
}

bool EpsVector::is_one() const {
    return std::all_of(signs.begin(), signs.end(), [](int x) { return x == 1; });
}

std::string eps_str(const EpsVector& e) {
    std::string s;
    for (int x : e.signs) s += x > 0 ? '+' : '-';
    return s;
}

EpsVector eps_parse(const std::string& s) {
    EpsVector e;
    for (char c : s) {
        if (c == '+')
            e.signs.push_back(1);
        else if (c == '-')
            e.signs.push_back(-1);
        else
            throw std::invalid_argument("sign vector must use + and -");
    }
    return e;
}

std::vector<EpsVector> all_eps(int s) {
    std::vector<EpsVector> out;
    for (unsigned m = 0; m < (1u << s); ++m) {
        EpsVector e;
        for (int i = 0; i < s; ++i) e.signs.push_back(m >> (s - 1 - i) & 1u ? -1 : 1);
        out.push_back(e);
    }
    return out;
}

EpsVector eps_H(const Level& L) {
    EpsVector e;
    for (const auto& p : L.primes) e.signs.push_back(p.deg() % 2 ? -1 : 1);
    return e;
}

EpsVector eps_H_s(const Level& L) {
    EpsVector e = eps_H(L);
    if (!e.signs.empty()) e.signs.back() = -e.signs.back();
    return e;
}

i128 N_of(const Field& F, const Level& L, const EpsVector& e) {
    i128 N = 1;
    for (int i = 0; i < L.s(); ++i) N = checked_mul(N, 1 + e.signs[i] * ipow(F.q(), L.primes[i].deg()));
    return N;
}

i128 nu_of(const Field& F, const Level& L, const EpsVector& e) { return e == eps_H(L) ? 1 : F.q() + 1; }

i128 etilde_closed(const Field& F, const TreeEdge& e) {
    auto h = tree::reduce_gl2a(F, e);
    i128 qi = ipow(F.q(), h.index + 1);
    return h.flipped ? 1 + F.q() - qi : qi;
}

FourierData etilde_fourier(FieldPtr F, const ScalarRing& R, int depth) {
    const int q = F->q(), e = F->e();
    FourierData f(F, R, poly::one(), depth);
    auto sig = sigma_table(*F, f.index());
    auto& num = f.numerators();
    const std::size_t w = R.p - 1;
    if (R.exact()) {
        // common denominator q^(1 + depth)
        for (std::size_t i = 0; i < f.index().size(); ++i) {
            int d = f.index().degree_of(i);
            num[i * w] = checked_mul(checked_mul(1 - static_cast<i128>(q) * q, sig[i]), ipow(q, depth - d));
        }
        f.set_den_exp(e * (1 + depth));
        f.normalize();
    } else {
        for (std::size_t i = 0; i < f.index().size(); ++i) {
            int d = f.index().degree_of(i);
            f.set_star_at(i, CycloRat::rational(R, (1 - static_cast<i128>(q) * q) * sig[i], e * (1 + d)));
        }
    }
    f.c0 = CycloRat::from_int(R, q);
    f.pairing = CycloRat::from_int(R, q + 1);
    return f;
}

EisCombo e_eps_combo(const Field& F, const Level& L, const EpsVector& e) {
    if (static_cast<int>(e.signs.size()) != L.s()) throw std::invalid_argument("sign vector length differs from number of primes");
    EisCombo c{L, {}, nu_of(F, L, e)};
    for (unsigned m = 0; m <= L.full_mask(); ++m) c.coeffs[m] = e.eps_d(m);
    return c;
}

namespace {

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

void check_same_level(const EisCombo& a, const EisCombo& b) {
    if (a.level.primes != b.level.primes) throw std::invalid_argument("combos at different levels");
}

}  // namespace

EisCombo combo_normalize(EisCombo c) {
    for (auto it = c.coeffs.begin(); it != c.coeffs.end();) it = it->second == 0 ? c.coeffs.erase(it) : std::next(it);
    i128 g = c.nu;
    for (const auto& kv : c.coeffs) g = gcd128(g, kv.second);
    if (c.nu < 0) g = -g;
    if (g != 0 && g != 1) {
        for (auto& kv : c.coeffs) kv.second /= g;
        c.nu /= g;
    }
    return c;
}

bool combo_equal(const EisCombo& a, const EisCombo& b) {
    check_same_level(a, b);
    EisCombo x = combo_normalize(a), y = combo_normalize(b);
    return x.nu == y.nu && x.coeffs == y.coeffs;
}

EisCombo combo_add(const EisCombo& a, const EisCombo& b) {
    check_same_level(a, b);
    EisCombo r{a.level, {}, checked_mul(a.nu, b.nu)};
    for (const auto& [m, v] : a.coeffs) r.coeffs[m] = checked_add(r.coeffs[m], checked_mul(v, b.nu));
    for (const auto& [m, v] : b.coeffs) r.coeffs[m] = checked_add(r.coeffs[m], checked_mul(v, a.nu));
    return combo_normalize(r);
}

EisCombo combo_scale(const EisCombo& a, i128 k) {
    EisCombo r = a;
    for (auto& kv : r.coeffs) kv.second = checked_mul(kv.second, k);
    return combo_normalize(r);
}

EisCombo combo_apply_W(const Field& F, const EisCombo& c, unsigned m) {
    (void)F;
    if (m & ~c.level.full_mask()) throw std::invalid_argument("W_m needs m || level");
    // Etilde|B_d|W_m = Etilde|B_{d m / (d, m)^2}
    EisCombo r{c.level, {}, c.nu};
    for (const auto& [d, v] : c.coeffs) r.coeffs[d ^ m] = checked_add(r.coeffs[d ^ m], v);
    return combo_normalize(r);
}

EisCombo combo_apply_U(const Field& F, const EisCombo& c, int i) {
    if (i < 0 || i >= c.level.s()) throw std::invalid_argument("U_p needs p | level");
    const unsigned b = 1u << i;
    const i128 np = ipow(F.q(), c.level.primes[i].deg());
    EisCombo r{c.level, {}, c.nu};
    for (const auto& [d, v] : c.coeffs) {
        if (d & b) {
            // Etilde|B_{d/p}|B_p|U_p = |p| Etilde|B_{d/p}
            r.coeffs[d ^ b] = checked_add(r.coeffs[d ^ b], checked_mul(np, v));
        } else {
            // Etilde|U_p = Etilde|T_p - Etilde|B_p = (|p| + 1) Etilde - Etilde|B_p
            r.coeffs[d] = checked_add(r.coeffs[d], checked_mul(np + 1, v));
            r.coeffs[d | b] = checked_add(r.coeffs[d | b], -v);
        }
    }
    return combo_normalize(r);
}

namespace {

unsigned drop_bit(unsigned m, int i) {
    unsigned low = m & ((1u << i) - 1);
    return low | ((m >> (i + 1)) << i);
}

}  // namespace

EisCombo trace_down(const Field& F, const EisCombo& c, int i) {
    EisCombo t = combo_add(c, combo_apply_U(F, combo_apply_W(F, c, 1u << i), i));
    std::vector<Poly> ps = c.level.primes;
    ps.erase(ps.begin() + i);
    EisCombo r{make_level(F, ps), {}, t.nu};
    for (const auto& [d, v] : t.coeffs) {
        if (d >> i & 1u) throw std::logic_error("trace left a B_p term behind");
        r.coeffs[drop_bit(d, i)] = v;
    }
    return combo_normalize(r);
}

EisCombo combo_embed(const Field& F, const EisCombo& c, const Level& big) {
    EisCombo r{big, {}, c.nu};
    for (const auto& [d, v] : c.coeffs) r.coeffs[mask_of(F, big, divisor(F, c.level, d))] = v;
    return combo_normalize(r);
}

bool combo_vanishes_mod(const EisCombo& c, i128 M) {
    for (const auto& [d, v] : c.coeffs) {
        (void)d;
        if (v % c.nu != 0 || (v / c.nu) % M != 0) return false;
    }
    return true;
}

FourierData combo_fourier(FieldPtr F, const ScalarRing& R, const EisCombo& c, int depth) {
    const ScalarRing X = ScalarRing::exact_ring(R.p);
    FourierData base = etilde_fourier(F, X, depth);
    FourierData acc(F, X, c.level.n, depth);
    for (const auto& [d, v] : c.coeffs) {
        FourierData t = cochain::truncate(cochain::apply_B(base, divisor(*F, c.level, d)), depth);
        t = cochain::with_level(t, c.level.n);
        acc = cochain::add(acc, cochain::scale(t, CycloRat::from_int(X, v)));
    }
    acc = cochain::div_exact(acc, c.nu);
    if (R.exact()) return acc;
    return cochain::reduce_mod(acc, R.modulus);
}

FourierData build_E_eps(FieldPtr F, const ScalarRing& R, const Level& L, const EpsVector& e, int depth) {
    EisCombo c = e_eps_combo(*F, L, e);
    return combo_fourier(std::move(F), R, c, depth);
}

namespace {

bool data_zero(const FourierData& f) {
    if (!f.c0.is_zero() || !f.pairing.is_zero()) return false;
    return std::all_of(f.numerators().begin(), f.numerators().end(), [](i128 x) { return x == 0; });
}

}  // namespace

int order_depth(const Level& L) { return std::max(L.n.deg(), 1); }

OrderCertificate eisenstein_order(FieldPtr F, const Level& L, const EpsVector& e, int ell, int r, bool enforce_hypotheses) {
    FourierData E = build_E_eps(F, ScalarRing::exact_ring(F->p()), L, e, order_depth(L));
    return eisenstein_order_from(E, L, e, ell, r, enforce_hypotheses);
}

OrderCertificate eisenstein_order_from(const FourierData& E, const Level& L, const EpsVector& e, int ell, int r,
                                       bool enforce_hypotheses) {
    const Field& F = E.field();
    const int q = F.q();
    if (!is_prime_int(ell) || r < 1) throw std::invalid_argument("ell must be prime and r >= 1");
    if (ell == F.p()) throw std::invalid_argument("ell must differ from the characteristic");
    if (!E.ring().exact()) throw std::invalid_argument("order certificate needs exact data");
    const bool inside = (static_cast<long long>(q) * (q - 1)) % ell != 0;
    if (!inside && enforce_hypotheses) throw std::invalid_argument("outside theorem hypotheses");
    OrderCertificate c;
    c.within_hypotheses = inside;
    c.N = N_of(F, L, e);
    c.nu = nu_of(F, L, e);
    const i128 M = ipow(ell, r);
    FourierData Em = cochain::reduce_mod(E, static_cast<std::int64_t>(M));
    if (e.is_one()) {
        // the smallest nonzero multiple ell^(r-1) E must fail cuspidal + harmonic
        c.order = 1;
        c.cuspidal = c.harmonic = c.nonzero = true;
        CycloRat b = CycloRat::from_int(Em.ring(), ipow(ell, r - 1));
        c.tight = !((Em.c0 * b).is_zero() && (Em.pairing * b).is_zero());
        return c;
    }
    i128 Nnu = c.N / c.nu;
    if (c.N % c.nu != 0) throw std::logic_error("nu does not divide N");
    c.order = gcd128(M, Nnu);
    i128 a = M / c.order;
    CycloRat A = CycloRat::from_int(Em.ring(), a);
    c.cuspidal = (Em.c0 * A).is_zero();
    c.harmonic = (Em.pairing * A).is_zero();
    c.nonzero = !data_zero(cochain::reduce_mod(E, ell));
    c.tight = a % ell != 0 || !(Em.c0 * CycloRat::from_int(Em.ring(), a / ell)).is_zero();
    return c;
}

}  // namespace tc

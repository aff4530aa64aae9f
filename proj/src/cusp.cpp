#include "treecochain/cusp.hpp"

#include <stdexcept>

namespace tc {

BigInt to_big(i128 x) {
    bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
    BigInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? BigInt(-r) : r;
}

std::string big_str(const BigInt& x) { return x.str(); }

BigInt cusp_degree(const CuspVector& v) {
    BigInt s = 0;
    for (const auto& x : v) s += x;
    return s;
}

CuspSet cusp_set(const Field& F, const Level& L) {
    CuspSet C{L, {}};
    for (unsigned m = 0; m <= L.full_mask(); ++m) C.labels.push_back(divisor(F, L, m));
    return C;
}

unsigned cusp_w_action(const Level& L, unsigned d, unsigned m) {
    if (d > L.full_mask() || m > L.full_mask()) throw std::invalid_argument("not a divisor mask of the level");
    return m ^ d;
}

Poly cusp_w_action(const Field& F, const Level& L, const Poly& d, const Poly& m) {
    return divisor(F, L, cusp_w_action(L, mask_of(F, L, d), mask_of(F, L, m)));
}

CuspVector cusp_w_apply(const Level& L, const CuspVector& v, unsigned d) {
    CuspVector w(v.size());
    for (unsigned m = 0; m < v.size(); ++m) w[cusp_w_action(L, d, m)] = v[m];
    return w;
}

unsigned cusp_classify(const Field& F, const Level& L, const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("(0 : 0) is not a point");
    if (!poly::gcd(F, a, b).is_one()) throw std::invalid_argument("cusp coordinates are not coprime");
    return mask_of(F, L, poly::gcd(F, b, L.n));
}

namespace {

std::vector<Poly> small_polys(const Field& F, int max_deg) {
    std::vector<Poly> out;
    const int q = F.q();
    std::size_t total = 1;
    for (int i = 0; i <= max_deg; ++i) total *= q;
    for (std::size_t code = 1; code < total; ++code) {
        std::vector<int> c;
        for (std::size_t v = code; v; v /= q) c.push_back(static_cast<int>(v % q));
        out.emplace_back(c);
    }
    return out;
}

}  // namespace

std::optional<unsigned> cusp_classify_search(const Field& F, const Level& L, const Poly& a, const Poly& b, int max_deg) {
    if (!poly::gcd(F, a, b).is_one()) throw std::invalid_argument("cusp coordinates are not coprime");
    const auto cs = small_polys(F, max_deg);
    std::vector<Poly> free_c{Poly()};
    free_c.insert(free_c.end(), cs.begin(), cs.end());
    // gamma = [[al, be], [n c, de]], gamma (1, m)^t = lam (a, b)^t, det gamma = u
    auto works = [&](const Poly& m, const Poly& al, const Poly& be, const Poly& c, const Poly& de, int lam, int u) {
        Poly nc = poly::mul(F, L.n, c);
        Poly det = poly::sub(F, poly::mul(F, al, de), poly::mul(F, be, nc));
        return det == poly::constant(u) && poly::add(F, al, poly::mul(F, be, m)) == poly::scale(F, a, lam) &&
               poly::add(F, nc, poly::mul(F, de, m)) == poly::scale(F, b, lam);
    };
    for (unsigned mask = 0; mask <= L.full_mask(); ++mask) {
        const Poly m = divisor(F, L, mask);
        for (int lam = 1; lam < F.q(); ++lam)
            for (int u = 1; u < F.q(); ++u)
                for (const auto& c : free_c) {
                    Poly nc = poly::mul(F, L.n, c);
                    auto [de, r] = poly::divmod(F, poly::sub(F, poly::scale(F, b, lam), nc), m);
                    if (!r.is_zero()) continue;
                    std::vector<Poly> betas;
                    if (b.is_zero()) {
                        betas = free_c;
                    } else {
                        auto [be, r2] = poly::divmod(F, poly::sub(F, poly::scale(F, poly::mul(F, a, de), lam), poly::constant(u)),
                                                     poly::scale(F, b, lam));
                        if (!r2.is_zero()) continue;
                        betas.push_back(be);
                    }
                    for (const auto& be : betas) {
                        Poly al = poly::sub(F, poly::scale(F, a, lam), poly::mul(F, be, m));
                        if (works(m, al, be, c, de, lam, u)) return mask;
                    }
                }
    }
    return std::nullopt;
}

CuspVector div_delta(const Field& F, const Level& L, unsigned d) {
    const BigInt nn = to_big(poly::norm(F, L.n));
    const BigInt nd = to_big(poly::norm(F, divisor(F, L, d)));
    CuspVector v(L.full_mask() + 1);
    for (unsigned m = 0; m <= L.full_mask(); ++m) {
        BigInt g = to_big(poly::norm(F, divisor(F, L, m & d)));
        BigInt num = nn * g * g, den = to_big(poly::norm(F, divisor(F, L, m))) * nd;
        if (num % den != 0) throw std::logic_error("non-integral Delta order");
        v[m] = num / den;
    }
    return v;
}

RelationLattice relation_lattice(const Field& F, const Level& L) {
    if (!poly::is_squarefree(F, L.n)) throw std::invalid_argument("level is not square-free");
    RelationLattice P{L, {}};
    std::vector<CuspVector> dd;
    for (unsigned d = 0; d <= L.full_mask(); ++d) dd.push_back(div_delta(F, L, d));
    for (std::size_t i = 0; i < dd.size(); ++i)
        for (std::size_t j = i + 1; j < dd.size(); ++j) {
            CuspVector g(dd[i].size());
            for (std::size_t k = 0; k < g.size(); ++k) g[k] = dd[i][k] - dd[j][k];
            if (cusp_degree(g) != 0) throw std::logic_error("relation of nonzero degree");
            P.generators.push_back(std::move(g));
        }
    return P;
}

CuspVector d_eps(const Level& L, const EpsVector& e) {
    CuspVector v(L.full_mask() + 1);
    for (unsigned m = 0; m <= L.full_mask(); ++m) v[m] = e.eps_d(m);
    return v;
}

CuspVector div_delta_eps(const Field& F, const Level& L, const EpsVector& e) {
    CuspVector v(L.full_mask() + 1, 0);
    for (unsigned d = 0; d <= L.full_mask(); ++d) {
        auto dd = div_delta(F, L, d);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += e.eps_d(d) * dd[k];
    }
    return v;
}

CuspVector div_delta_ratio(const Field& F, const Level& L, int i) {
    auto a = div_delta(F, L, 0), b = div_delta(F, L, 1u << i);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
    return a;
}

CuspVector delta_ratio_formula(const Field& F, const Level& L, int i) {
    const unsigned bit = 1u << i;
    const BigInt np = to_big(poly::norm(F, L.primes[i]));
    const BigInt nprime = to_big(poly::norm(F, L.n)) / np;
    CuspVector v(L.full_mask() + 1, 0);
    for (unsigned m = 0; m <= L.full_mask(); ++m) {
        if (m & bit) continue;
        BigInt c = (np - 1) * (nprime / to_big(poly::norm(F, divisor(F, L, m))));
        v[m] += c;
        v[m | bit] -= c;
    }
    return v;
}

CuspQuotient cusp_quotient(const Field& /*F*/, const RelationLattice& P) {
    CuspQuotient Q{P.level, {}, {}, 0};
    const std::size_t dim = P.level.full_mask();  // 2^s - 1 coordinates
    if (dim == 0) return Q;
    IntMatrix M;
    for (const auto& g : P.generators) M.emplace_back(g.begin() + 1, g.end());
    if (M.empty()) M.emplace_back(dim, 0);
    Q.snf = smith_normal_form(M);
    for (int i = 0; i < Q.snf.rank; ++i)
        if (Q.snf.diag[i] != 1) Q.elementary.push_back(Q.snf.diag[i]);
    Q.free_rank = static_cast<int>(dim) - Q.snf.rank;
    return Q;
}

std::optional<BigInt> quotient_order(const CuspQuotient& Q, const CuspVector& x) {
    if (cusp_degree(x) != 0) throw std::invalid_argument("vector is not of degree zero");
    const std::size_t dim = Q.level.full_mask();
    if (dim == 0) return BigInt(1);
    IntMatrix row{std::vector<BigInt>(x.begin() + 1, x.end())};
    auto y = mat_mul(row, Q.snf.V)[0];
    BigInt order = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        if (static_cast<int>(i) >= Q.snf.rank) {
            if (y[i] != 0) return std::nullopt;
            continue;
        }
        const BigInt& d = Q.snf.diag[i];
        BigInt k = d / gcd(d, abs(y[i]));
        order = lcm(order, k);
    }
    return order;
}

bool in_lattice(const CuspQuotient& Q, const CuspVector& x) {
    auto o = quotient_order(Q, x);
    return o && *o == 1;
}

int ord_ell(BigInt x, int ell) {
    if (x == 0) throw std::invalid_argument("valuation of zero");
    x = abs(x);
    int k = 0;
    while (x % ell == 0) {
        x /= ell;
        ++k;
    }
    return k;
}

namespace {

std::vector<int> prime_factors(BigInt x) {
    std::vector<int> out;
    x = abs(x);
    for (int p = 2; BigInt(p) * p <= x; ++p) {
        if (x % p != 0) continue;
        out.push_back(p);
        while (x % p == 0) x /= p;
    }
    if (x > 1) out.push_back(static_cast<int>(x));
    return out;
}

bool equal_scaled(const CuspVector& a, const CuspVector& b, const BigInt& k) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != k * b[i]) return false;
    return true;
}

}  // namespace

bool CuspGroupReport::ok() const {
    for (const auto& r : rows)
        if (!(r.expansion_ok && r.w_ok && r.sandwich_ok)) return false;
    return true;
}

CuspGroupReport cusp_group(const Field& F, const Level& L) {
    CuspGroupReport rep{cusp_quotient(F, relation_lattice(F, L)), {}};
    const int q = F.q();
    for (const auto& e : all_eps(L.s())) {
        if (e.is_one()) continue;
        EpsOrderRow row{e, N_of(F, L, e), nu_of(F, L, e), std::nullopt, false, false, false};
        CuspVector D = d_eps(L, e);
        const BigInt N = to_big(row.N), nu = to_big(row.nu);
        row.expansion_ok = equal_scaled(div_delta_eps(F, L, e), D, e.eps_d(L.full_mask()) * N);
        row.w_ok = true;
        for (int i = 0; i < L.s(); ++i) {
            CuspVector W = cusp_w_apply(L, D, 1u << i);
            if (!equal_scaled(W, D, e.signs[i])) row.w_ok = false;
        }
        row.order = quotient_order(rep.quotient, D);
        if (row.order && N % nu == 0) {
            row.sandwich_ok = true;
            auto ells = prime_factors(N * *row.order);
            for (int ell : ells) {
                if ((q * (q - 1)) % ell == 0) continue;
                int lo = ord_ell(N / nu, ell), mid = ord_ell(*row.order, ell), hi = ord_ell(N, ell);
                if (!(lo <= mid && mid <= hi)) row.sandwich_ok = false;
            }
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

BigInt rho(const Field& F, const Level& L) {
    BigInt r = 1;
    for (const auto& p : L.primes) {
        BigInt np = to_big(poly::norm(F, p));
        r *= np - 1;
        for (int k = 1; k < L.s(); ++k) r *= np + 1;
    }
    return r;
}

namespace {

unsigned lift_mask(unsigned m, int i) { return ((m >> i) << (i + 1)) | (m & ((1u << i) - 1)); }

CuspVector pullback(const Level& L, int i, const BigInt& np, const CuspVector& v, bool twisted) {
    CuspVector w(L.full_mask() + 1, 0);
    const unsigned bit = 1u << i;
    for (unsigned m = 0; m < v.size(); ++m) {
        unsigned lo = lift_mask(m, i), hi = lo | bit;
        w[twisted ? hi : lo] += np * v[m];
        w[twisted ? lo : hi] += v[m];
    }
    return w;
}

CuspVector unit_diff(std::size_t size, unsigned a, unsigned b) {
    CuspVector v(size, 0);
    v[a] += 1;
    v[b] -= 1;
    return v;
}

}  // namespace

ExponentReport exponent_check(const Field& F, const Level& L) {
    ExponentReport rep;
    rep.rho = rho(F, L);
    auto P = relation_lattice(F, L);
    auto Q = cusp_quotient(F, P);
    rep.elementary = Q.elementary;
    rep.divides = Q.free_rank == 0;
    for (const auto& d : Q.elementary)
        if (rep.rho % d != 0) rep.divides = false;
    rep.p_part_trivial = Q.free_rank == 0;
    for (const auto& d : Q.elementary)
        if (d % F.p() == 0) rep.p_part_trivial = false;

    rep.pullbacks_ok = rep.identities_ok = true;
    const std::size_t size = L.full_mask() + 1;
    for (int i = 0; i < L.s(); ++i) {
        std::vector<Poly> rest;
        for (int j = 0; j < L.s(); ++j)
            if (j != i) rest.push_back(L.primes[j]);
        Level sub = make_level(F, rest);
        const BigInt np = to_big(poly::norm(F, L.primes[i]));
        const unsigned bit = 1u << i;
        for (const auto& g : relation_lattice(F, sub).generators)
            for (bool tw : {false, true})
                if (!in_lattice(Q, pullback(L, i, np, g, tw))) rep.pullbacks_ok = false;
        for (unsigned m1 = 0; m1 <= sub.full_mask(); ++m1)
            for (unsigned m2 = 0; m2 <= sub.full_mask(); ++m2) {
                CuspVector x(sub.full_mask() + 1, 0);
                x[m1] += 1;
                x[m2] -= 1;
                auto a = pullback(L, i, np, x, false), b = pullback(L, i, np, x, true);
                unsigned l1 = lift_mask(m1, i), l2 = lift_mask(m2, i);
                CuspVector lhs1(size), lhs2(size), lhs3(size);
                for (std::size_t k = 0; k < size; ++k) {
                    lhs1[k] = np * a[k] - b[k];
                    lhs2[k] = np * b[k] - a[k];
                    lhs3[k] = a[k] - b[k];
                }
                auto r3 = unit_diff(size, l1, l1 | bit);
                auto r3b = unit_diff(size, l2, l2 | bit);
                for (std::size_t k = 0; k < size; ++k) r3[k] -= r3b[k];
                if (!equal_scaled(lhs1, unit_diff(size, l1, l2), np * np - 1) ||
                    !equal_scaled(lhs2, unit_diff(size, l1 | bit, l2 | bit), np * np - 1) ||
                    !equal_scaled(lhs3, r3, np - 1))
                    rep.identities_ok = false;
            }
        if (div_delta_ratio(F, L, i) != delta_ratio_formula(F, L, i)) rep.identities_ok = false;
    }
    return rep;
}

}  // namespace tc

#include "treecochain/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace tc {

GL2F GL2F::identity() { return from_polys(poly::one(), Poly(), Poly(), poly::one()); }

GL2F GL2F::from_polys(const Poly& a, const Poly& b, const Poly& c, const Poly& d) {
    return {RatFunc(a), RatFunc(b), RatFunc(c), RatFunc(d)};
}

namespace gl2 {

GL2F mul(const Field& F, const GL2F& x, const GL2F& y) {
    using namespace rf;
    return {add(F, rf::mul(F, x.a, y.a), rf::mul(F, x.b, y.c)), add(F, rf::mul(F, x.a, y.b), rf::mul(F, x.b, y.d)),
            add(F, rf::mul(F, x.c, y.a), rf::mul(F, x.d, y.c)), add(F, rf::mul(F, x.c, y.b), rf::mul(F, x.d, y.d))};
}

RatFunc det(const Field& F, const GL2F& g) { return rf::sub(F, rf::mul(F, g.a, g.d), rf::mul(F, g.b, g.c)); }

GL2F inverse(const Field& F, const GL2F& g) {
    RatFunc D = det(F, g);
    if (D.is_zero()) throw std::domain_error("singular matrix");
    RatFunc Di = rf::inv(F, D);
    return {rf::mul(F, g.d, Di), rf::neg(F, rf::mul(F, g.b, Di)), rf::neg(F, rf::mul(F, g.c, Di)), rf::mul(F, g.a, Di)};
}

GL2F scale(const Field& F, const GL2F& g, const RatFunc& s) {
    return {rf::mul(F, g.a, s), rf::mul(F, g.b, s), rf::mul(F, g.c, s), rf::mul(F, g.d, s)};
}

GL2F translation(const Poly& b) { return GL2F::from_polys(poly::one(), b, Poly(), poly::one()); }
GL2F dilation(const Poly& m) { return GL2F::from_polys(m, Poly(), Poly(), poly::one()); }
GL2F flip() { return {RatFunc(), RatFunc(poly::one()), rf::pi_pow(1), RatFunc()}; }
GL2F weyl() { return GL2F::from_polys(Poly(), poly::one(), poly::one(), Poly()); }

bool in_gl2a(const Field& F, const GL2F& g) {
    if (!(g.a.is_poly() && g.b.is_poly() && g.c.is_poly() && g.d.is_poly())) return false;
    RatFunc D = det(F, g);
    return D.is_poly() && D.num.deg() == 0;
}

bool in_gamma0(const Field& F, const GL2F& g, const Poly& n) {
    return in_gl2a(F, g) && poly::divides(F, n, g.c.num);
}

std::string str(const Field& F, const GL2F& g) {
    return "[[" + rf::str(F, g.a) + ", " + rf::str(F, g.b) + "], [" + rf::str(F, g.c) + ", " + rf::str(F, g.d) + "]]";
}

}  // namespace gl2

bool TreeEdge::operator<(const TreeEdge& o) const {
    if (positive != o.positive) return positive > o.positive;
    if (k != o.k) return k < o.k;
    return u < o.u;
}

namespace tree {

namespace {

// Reduces [[a, b], [c, d]] with ord c > ord d (or c = 0) to (k, u).
// Right multiplication by [[1, 0], [-c/d, 1]] (Iwahori since ord(c/d) >= 1)
// kills c; the center scales d to 1; a unit diagonal entry and an
// O_inf-translation then normalize the top row.
std::pair<int, LaurentPoly> upper_form(const Field& F, const GL2F& g) {
    int k = rf::ord_inf(gl2::det(F, g)) - 2 * rf::ord_inf(g.d);
    LaurentPoly u = laurent::from_ratfunc(F, rf::div(F, g.b, g.d), k);
    return {k, u};
}

}  // namespace

TreeEdge make_edge(int k, const LaurentPoly& u, bool positive) { return {k, laurent::truncate(u, k), positive}; }

TreeEdge normal_form(const Field& F, const GL2F& g) {
    if (gl2::det(F, g).is_zero()) throw std::domain_error("singular matrix");
    // ord c > ord d is invariant under right multiplication by Z I_inf:
    // the lower row (c, d) becomes (c x + d z, c y + d w) with ord z >= 1
    // and x, w units, so both valuations shift in a way that keeps the gap.
    if (!g.d.is_zero() && rf::ord_inf(g.c) > rf::ord_inf(g.d)) {
        auto [k, u] = upper_form(F, g);
        return {k, u, true};
    }
    // g = (g flip^-1) flip, and g flip^-1 = [[b, aT], [d, cT]] is positive.
    RatFunc T(poly::T());
    GL2F h{g.b, rf::mul(F, g.a, T), g.d, rf::mul(F, g.c, T)};
    auto [k, u] = upper_form(F, h);
    return {k, u, false};
}

TreeVertex vertex_normal_form(const Field& F, const GL2F& g) {
    if (gl2::det(F, g).is_zero()) throw std::domain_error("singular matrix");
    GL2F h = g;
    // columns may be swapped by GL_2(O_inf)
    if (h.d.is_zero() || rf::ord_inf(h.c) < rf::ord_inf(h.d)) h = {g.b, g.a, g.d, g.c};
    auto [k, u] = upper_form(F, h);
    return {k, u};
}

GL2F edge_matrix(const Field& F, const TreeEdge& e) {
    GL2F m{rf::pi_pow(e.k), laurent::to_ratfunc(F, e.u), RatFunc(), RatFunc(poly::one())};
    return e.positive ? m : gl2::mul(F, m, gl2::flip());
}

TreeEdge act(const Field& F, const GL2F& g, const TreeEdge& e) { return normal_form(F, gl2::mul(F, g, edge_matrix(F, e))); }

TreeVertex origin(const Field& F, const TreeEdge& e) { return vertex_normal_form(F, edge_matrix(F, e)); }

TreeVertex terminus(const Field& F, const TreeEdge& e) {
    GL2F m = edge_matrix(F, e);
    GL2F shifted{m.a, rf::mul(F, m.b, rf::pi_pow(1)), m.c, rf::mul(F, m.d, rf::pi_pow(1))};
    return vertex_normal_form(F, shifted);  // g diag(1, pi) ~ g diag(pi^-1, 1)
}

std::vector<TreeEdge> incoming_neighbors(const Field& F, const TreeEdge& e) {
    GL2F m = edge_matrix(F, e);
    std::vector<TreeEdge> out;
    out.reserve(F.q());
    for (int c = 0; c < F.q(); ++c) {
        GL2F s{rf::pi_pow(1), RatFunc(poly::constant(c)), RatFunc(), RatFunc(poly::one())};
        out.push_back(normal_form(F, gl2::mul(F, m, s)));
    }
    return out;
}

TreeEdge half_line_edge(int i, bool flipped) { return {-i, LaurentPoly(), !flipped}; }

HalfLinePos reduce_gl2a(const Field& F, const TreeEdge& e) {
    HalfLinePos res;
    res.gamma = GL2F::identity();
    int k = e.k;
    LaurentPoly u = e.u;
    // Each pass either stops or replaces k by k - 2 ord(u) with ord(u) >= 1,
    // so k drops by at least 2 and the loop ends after at most k/2 + 1 passes.
    const int cap = std::max(4, std::abs(k) + 4);
    for (;;) {
        if (++res.steps > cap) throw std::logic_error("reduce_gl2a did not terminate");
        Poly P = laurent::poly_part(u);
        if (!P.is_zero()) {
            res.gamma = gl2::mul(F, gl2::translation(poly::neg(F, P)), res.gamma);
            u = laurent::frac_part(u);
        }
        if (u.is_zero()) {
            if (k <= 0) {
                res.index = -k;
                res.flipped = false;
            } else {
                res.gamma = gl2::mul(F, gl2::weyl(), res.gamma);
                res.index = k - 1;
                res.flipped = true;
            }
            break;
        }
        int o = u.ord();
        res.gamma = gl2::mul(F, gl2::weyl(), res.gamma);
        k -= 2 * o;
        u = laurent::inverse(F, u, k);
    }
    if (!e.positive) res.flipped = !res.flipped;
    return res;
}

namespace {

// Solve A x = rhs over F_q; returns particular solution and kernel basis,
// or false when inconsistent.
bool solve_affine(const Field& F, std::vector<std::vector<int>> A, std::vector<int> rhs, int nvars,
                  std::vector<int>& part, std::vector<std::vector<int>>& kernel) {
    const int rows = static_cast<int>(A.size());
    std::vector<int> pivcol;
    int r = 0;
    for (int col = 0; col < nvars && r < rows; ++col) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (A[i][col]) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(A[piv], A[r]);
        std::swap(rhs[piv], rhs[r]);
        int inv = F.inv(A[r][col]);
        for (int j = 0; j < nvars; ++j) A[r][j] = F.mul(A[r][j], inv);
        rhs[r] = F.mul(rhs[r], inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || !A[i][col]) continue;
            int f = A[i][col];
            for (int j = 0; j < nvars; ++j) A[i][j] = F.sub(A[i][j], F.mul(f, A[r][j]));
            rhs[i] = F.sub(rhs[i], F.mul(f, rhs[r]));
        }
        pivcol.push_back(col);
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (rhs[i]) return false;
    part.assign(nvars, 0);
    for (int i = 0; i < r; ++i) part[pivcol[i]] = rhs[i];
    std::vector<bool> is_piv(nvars, false);
    for (int c : pivcol) is_piv[c] = true;
    kernel.clear();
    for (int fcol = 0; fcol < nvars; ++fcol) {
        if (is_piv[fcol]) continue;
        std::vector<int> v(nvars, 0);
        v[fcol] = 1;
        for (int i = 0; i < r; ++i) v[pivcol[i]] = F.neg(A[i][fcol]);
        kernel.push_back(v);
    }
    return true;
}

bool certify(const Field& F, const Positivized& p, const TreeEdge& e, const Poly& n) {
    return gl2::in_gamma0(F, p.gamma, n) && p.edge.positive && act(F, p.gamma, e) == p.edge;
}

Positivized finish(const Field& F, const TreeEdge& e, const Poly& c, const Poly& d) {
    auto x = poly::xgcd(F, d, c);  // s d + t c = 1
    if (!x.g.is_one()) throw std::logic_error("reduce_to_positive: lower row not coprime");
    Positivized p;
    p.gamma = GL2F::from_polys(x.s, poly::neg(F, x.t), c, d);
    p.edge = act(F, p.gamma, e);
    return p;
}

// Explicit construction: alpha = 1/n + P + s/g with g an irreducible
// coprime to n of degree >= r - 1, which is coprime by design.
Positivized construct(const Field& F, const TreeEdge& e, const Poly& n) {
    const int r = e.k;
    LaurentPoly x = laurent::neg(F, e.u);
    LaurentPoly inv_n = laurent::from_ratfunc(F, RatFunc(F, poly::one(), n), r);
    LaurentPoly xp = laurent::truncate(laurent::sub(F, x, inv_n), r);
    Poly P = laurent::poly_part(xp);
    LaurentPoly frac = laurent::frac_part(xp);
    if (frac.is_zero()) {
        // d / c = (1 + n P) / n
        return finish(F, e, n, poly::add(F, poly::one(), poly::mul(F, n, P)));
    }
    for (int deg = std::max(r - 1, 1);; ++deg) {
        for (const auto& g : poly::monics_of_degree(F, deg)) {
            if (!poly::is_irreducible(F, g) || !poly::gcd(F, g, n).is_one()) continue;
            Poly s = laurent::poly_part(laurent::mul(F, laurent::from_poly(g), frac));
            Poly c = poly::mul(F, n, g);
            Poly d = poly::add(F, g, poly::mul(F, n, poly::add(F, poly::mul(F, P, g), s)));
            return finish(F, e, c, d);
        }
    }
}

}  // namespace

Positivized reduce_to_positive(const Field& F, const TreeEdge& e, const Poly& n, bool search) {
    if (n.is_zero()) throw std::invalid_argument("level must be nonzero");
    if (e.positive) return {GL2F::identity(), e, false};
    const int r = e.k;
    const int dn = n.deg();
    if (search) {
        // c = n g, g monic of degree delta; need ord(g y + d) >= r - dn - delta
        // with y = n u, i.e. the pi^1 .. pi^(r-dn-delta-1) coefficients of g y vanish.
        LaurentPoly y = laurent::mul(F, laurent::from_poly(n), e.u);
        const int top = r - dn;  // y is exact below pi^top
        for (int delta = 0; delta <= std::max(top, 0) + 2; ++delta) {
            int ncond = top - delta - 1;
            std::vector<std::vector<int>> A;
            std::vector<int> rhs;
            for (int j = 1; j <= ncond; ++j) {
                std::vector<int> row(delta);
                for (int i = 0; i < delta; ++i) row[i] = y.coef(j + i);
                A.push_back(row);
                rhs.push_back(F.neg(y.coef(j + delta)));
            }
            std::vector<int> part;
            std::vector<std::vector<int>> ker;
            if (!solve_affine(F, A, rhs, delta, part, ker)) continue;
            std::size_t total = 1;
            for (std::size_t i = 0; i < ker.size() && total < 4096; ++i) total *= F.q();
            total = std::min<std::size_t>(total, 4096);
            for (std::size_t idx = 0; idx < total; ++idx) {
                std::vector<int> gc = part;
                std::size_t t = idx;
                for (const auto& kv : ker) {
                    int a = static_cast<int>(t % F.q());
                    t /= F.q();
                    if (a)
                        for (int i = 0; i < delta; ++i) gc[i] = F.add(gc[i], F.mul(a, kv[i]));
                }
                gc.push_back(1);
                Poly g(gc);
                Poly c = poly::mul(F, n, g);
                LaurentPoly gy = laurent::truncate(laurent::mul(F, laurent::from_poly(g), y), top - delta);
                Poly d = poly::neg(F, laurent::poly_part(gy));
                // when deg c >= r, d may move by anything of degree <= deg c - r
                std::vector<Poly> shifts{Poly()};
                for (int i = 0; i <= c.deg() - r && i < 3; ++i)
                    for (int a = 1; a < F.q(); ++a) shifts.push_back(poly::monomial(a, i));
                for (const auto& w : shifts) {
                    Poly dd = poly::add(F, d, w);
                    if (dd.is_zero() || !poly::gcd(F, c, dd).is_one()) continue;
                    Positivized p = finish(F, e, c, dd);
                    if (certify(F, p, e, n)) return p;
                    throw std::logic_error("reduce_to_positive: search produced an uncertified element");
                }
            }
        }
    }
    Positivized p = construct(F, e, n);
    p.used_fallback = search;
    if (!certify(F, p, e, n)) throw std::logic_error("reduce_to_positive: construction failed certification");
    return p;
}

std::string str(const Field& F, const TreeEdge& e) {
    return "(" + std::to_string(e.k) + "; " + laurent::str(F, e.u) + "; " + (e.positive ? "+" : "-") + ")";
}

TreeEdge parse(const Field& F, const std::string& s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw std::invalid_argument("malformed edge '" + s + "'");
    std::string body = s.substr(1, s.size() - 2);
    auto p1 = body.find(';');
    auto p2 = body.find(';', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos) throw std::invalid_argument("malformed edge '" + s + "'");
    auto trim = [](std::string t) {
        auto b = t.find_first_not_of(' ');
        auto en = t.find_last_not_of(' ');
        return b == std::string::npos ? std::string() : t.substr(b, en - b + 1);
    };
    std::string ks = trim(body.substr(0, p1)), us = trim(body.substr(p1 + 1, p2 - p1 - 1)), os = trim(body.substr(p2 + 1));
    if (ks.empty() || (os != "+" && os != "-")) throw std::invalid_argument("malformed edge '" + s + "'");
    std::size_t used = 0;
    int k = 0;
    try {
        k = std::stoi(ks, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed edge level '" + ks + "'");
    }
    if (used != ks.size() || std::to_string(k) != ks) throw std::invalid_argument("malformed edge level '" + ks + "'");
    LaurentPoly u = laurent::parse(F, us);
    if (!u.is_zero() && u.hi() >= k) throw std::invalid_argument("edge tail has terms at or beyond pi^k");
    TreeEdge e{k, u, os == "+"};
    auto squeeze = [](std::string t) {
        std::erase(t, ' ');
        return t;
    };
    if (squeeze(str(F, e)) != squeeze(s)) throw std::invalid_argument("non-canonical edge text '" + s + "'");
    return e;
}

TreeEdge random_edge(const Field& F, std::mt19937_64& rng, int kmin, int kmax, bool positive, int lo_u) {
    std::uniform_int_distribution<int> kd(kmin, kmax), cd(0, F.q() - 1);
    int k = kd(rng);
    std::vector<int> c;
    for (int i = lo_u; i < k; ++i) c.push_back(cd(rng));
    return {k, LaurentPoly(lo_u, c), positive};
}

}  // namespace tree

}  // namespace tc

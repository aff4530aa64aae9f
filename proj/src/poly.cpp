#include "treecochain/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tc {

bool Poly::operator<(const Poly& o) const {
    if (deg() != o.deg()) return deg() < o.deg();
    for (int i = deg(); i >= 0; --i)
        if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
}

namespace poly {

Poly constant(int a) { return Poly(std::vector<int>{a}); }

Poly monomial(int a, int d) {
    if (a == 0) return Poly();
    std::vector<int> c(d + 1, 0);
    c[d] = a;
    return Poly(std::move(c));
}

Poly add(const Field& F, const Poly& a, const Poly& b) {
    std::vector<int> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coef(static_cast<int>(i)), b.coef(static_cast<int>(i)));
    return Poly(std::move(c));
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
    std::vector<int> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coef(static_cast<int>(i)), b.coef(static_cast<int>(i)));
    return Poly(std::move(c));
}

Poly neg(const Field& F, const Poly& a) {
    Poly r = a;
    for (int& x : r.c) x = F.neg(x);
    return r;
}

Poly scale(const Field& F, const Poly& a, int s) {
    if (s == 0) return Poly();
    Poly r = a;
    for (int& x : r.c) x = F.mul(x, s);
    return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<int> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
    }
    return Poly(std::move(c));
}

Poly shift(const Poly& a, int k) {
    if (a.is_zero()) return a;
    std::vector<int> c(k, 0);
    c.insert(c.end(), a.c.begin(), a.c.end());
    return Poly(std::move(c));
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.deg() < b.deg()) return {Poly(), a};
    std::vector<int> r = a.c;
    std::vector<int> qc(a.deg() - b.deg() + 1, 0);
    const int li = F.inv(b.lead());
    for (int i = a.deg(); i >= b.deg(); --i) {
        int coef = r[i];
        if (coef == 0) continue;
        int f = F.mul(coef, li);
        qc[i - b.deg()] = f;
        for (int j = 0; j <= b.deg(); ++j) r[i - b.deg() + j] = F.sub(r[i - b.deg() + j], F.mul(f, b.c[j]));
    }
    return {Poly(std::move(qc)), Poly(std::move(r))};
}

Poly mod(const Field& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

Poly div_exact(const Field& F, const Poly& a, const Poly& b) {
    auto [qt, r] = divmod(F, a, b);
    if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
    return qt;
}

bool divides(const Field& F, const Poly& d, const Poly& a) { return mod(F, a, d).is_zero(); }

Poly monic(const Field& F, const Poly& a) {
    if (a.is_zero()) return a;
    return scale(F, a, F.inv(a.lead()));
}

Poly gcd(const Field& F, const Poly& a, const Poly& b) { return xgcd(F, a, b).g; }

Xgcd xgcd(const Field& F, const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd undefined");
    Poly r0 = a, r1 = b, s0 = one(), s1, t0, t1 = one();
    while (!r1.is_zero()) {
        auto [qt, r] = divmod(F, r0, r1);
        Poly s2 = sub(F, s0, mul(F, qt, s1));
        Poly t2 = sub(F, t0, mul(F, qt, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    int li = F.inv(r0.lead());
    return {scale(F, r0, li), scale(F, s0, li), scale(F, t0, li)};
}

Poly inv_mod(const Field& F, const Poly& a, const Poly& m) {
    auto x = xgcd(F, a, m);
    if (!x.g.is_one()) throw std::domain_error("not invertible modulo m");
    return mod(F, x.s, m);
}

Poly crt(const Field& F, const std::vector<std::pair<Poly, Poly>>& pairs) {
    Poly M = one();
    for (const auto& [m, r] : pairs) {
        if (m.is_zero()) throw std::domain_error("crt modulus is zero");
        if (!gcd(F, M, m).is_one()) throw std::domain_error("crt moduli are not coprime");
        M = mul(F, M, m);
    }
    Poly x;
    for (const auto& [m, r] : pairs) {
        Poly co = div_exact(F, M, m);
        Poly e = mul(F, co, inv_mod(F, mod(F, co, m), m));
        x = add(F, x, mul(F, e, mod(F, r, m)));
    }
    return mod(F, x, M);
}

Poly powmod(const Field& F, const Poly& base, std::uint64_t e, const Poly& m) {
    Poly r = mod(F, one(), m), b = mod(F, base, m);
    while (e) {
        if (e & 1) r = mod(F, mul(F, r, b), m);
        b = mod(F, mul(F, b, b), m);
        e >>= 1;
    }
    return r;
}

namespace {

// T^(q^k) mod f, by k successive q-th powers.
Poly frobenius_power(const Field& F, const Poly& f, int k) {
    Poly x = mod(F, T(), f);
    for (int i = 0; i < k; ++i) x = powmod(F, x, static_cast<std::uint64_t>(F.q()), f);
    return x;
}

}  // namespace

bool is_irreducible(const Field& F, const Poly& f) {
    if (f.deg() < 1) throw std::invalid_argument("irreducibility of a constant");
    const int n = f.deg();
    if (n == 1) return true;
    Poly fm = monic(F, f);
    // Rabin: T^(q^n) = T mod f and gcd(T^(q^(n/r)) - T, f) = 1 for primes r | n
    if (sub(F, frobenius_power(F, fm, n), mod(F, T(), fm)).c.size() != 0) return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r != 0 || !is_prime_int(r)) continue;
        Poly h = sub(F, frobenius_power(F, fm, n / r), T());
        if (!gcd(F, h, fm).is_one()) return false;
    }
    return true;
}

std::vector<Poly> monics_of_degree(const Field& F, int d) {
    const int q = F.q();
    std::size_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    std::vector<Poly> out;
    out.reserve(count);
    std::vector<int> c(d + 1, 0);
    c[d] = 1;
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t v = idx;
        for (int i = 0; i < d; ++i) {
            c[i] = static_cast<int>(v % q);
            v /= q;
        }
        out.emplace_back(c);
    }
    return out;
}

std::vector<std::pair<Poly, int>> factor(const Field& F, const Poly& m) {
    if (m.is_zero()) throw std::domain_error("factorization of zero");
    std::vector<std::pair<Poly, int>> out;
    Poly rest = monic(F, m);
    for (int d = 1; 2 * d <= rest.deg(); ++d) {
        for (const Poly& cand : monics_of_degree(F, d)) {
            if (2 * d > rest.deg()) break;
            int mult = 0;
            for (;;) {
                auto [qt, r] = divmod(F, rest, cand);
                if (!r.is_zero()) break;
                rest = std::move(qt);
                ++mult;
            }
            if (mult) out.emplace_back(cand, mult);
        }
    }
    if (rest.deg() >= 1) {
        bool merged = false;
        for (auto& [pf, e] : out)
            if (pf == rest) {
                ++e;
                merged = true;
            }
        if (!merged) out.emplace_back(rest, 1);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

bool is_squarefree(const Field& F, const Poly& m) {
    for (const auto& [pf, e] : factor(F, m))
        if (e > 1) return false;
    return true;
}

std::int64_t norm(const Field& F, const Poly& m) {
    std::int64_t r = 1;
    for (int i = 0; i < m.deg(); ++i) r *= F.q();
    return r;
}

std::int64_t sigma(const Field& F, const Poly& m) {
    if (m.is_zero()) throw std::domain_error("sigma of zero");
    std::int64_t r = 1;
    for (const auto& [pf, e] : factor(F, m)) {
        std::int64_t np = norm(F, pf), term = 1, pw = 1;
        for (int i = 0; i < e; ++i) {
            pw *= np;
            term += pw;
        }
        r *= term;
    }
    return r;
}

int eval(const Field& F, const Poly& a, int x) {
    int r = 0;
    for (int i = a.deg(); i >= 0; --i) r = F.add(F.mul(r, x), a.c[i]);
    return r;
}

std::string str(const Field& F, const Poly& a) {
    if (a.is_zero()) return "0";
    if (a.deg() == 0) return F.str(a.c[0]);
    std::ostringstream os;
    bool first = true;
    for (int i = a.deg(); i >= 0; --i) {
        int c = a.c[i];
        if (c == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << F.str(c, true);
            continue;
        }
        if (c != 1) os << F.str(c, true) << '*';
        os << 'T';
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

namespace {

std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

Poly parse(const Field& F, const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty polynomial text");
    Poly acc;
    for (const std::string& term : split_top_level(s, '+')) {
        if (term.empty()) throw std::invalid_argument("malformed polynomial: '" + s + "'");
        std::string coef = "1", mono = term;
        auto star = term.rfind('*');
        if (star != std::string::npos) {
            coef = term.substr(0, star);
            mono = term.substr(star + 1);
        }
        int d = 0;
        if (!mono.empty() && mono[0] == 'T') {
            if (mono.size() == 1) {
                d = 1;
            } else if (mono[1] == '^' && mono.size() > 2 &&
                       std::all_of(mono.begin() + 2, mono.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
                d = std::stoi(mono.substr(2));
            } else {
                throw std::invalid_argument("malformed monomial: '" + term + "'");
            }
        } else {
            if (star != std::string::npos) throw std::invalid_argument("malformed term: '" + term + "'");
            coef = mono;
            d = 0;
        }
        acc = add(F, acc, monomial(F.parse(coef), d));
    }
    if (str(F, acc) != s) throw std::invalid_argument("non-canonical polynomial text: '" + s + "'");
    return acc;
}

}  // namespace poly

MonicIndex::MonicIndex(int q, int max_deg) : q_(q), max_deg_(max_deg) {
    offset_.assign(max_deg + 2, 0);
    std::size_t pw = 1;
    for (int d = 0; d <= max_deg; ++d) {
        offset_[d + 1] = offset_[d] + pw;
        pw *= q;
    }
}

std::size_t MonicIndex::index(const Poly& m) const {
    int d = m.deg();
    if (d < 0 || d > max_deg_ || m.lead() != 1) throw std::out_of_range("monic index out of range");
    std::size_t local = 0;
    for (int i = d - 1; i >= 0; --i) local = local * q_ + m.c[i];
    return offset_[d] + local;
}

int MonicIndex::degree_of(std::size_t idx) const {
    int d = 0;
    while (offset_[d + 1] <= idx) ++d;
    return d;
}

Poly MonicIndex::poly(std::size_t idx) const {
    int d = degree_of(idx);
    std::size_t local = idx - offset_[d];
    std::vector<int> c(d + 1, 0);
    c[d] = 1;
    for (int i = 0; i < d; ++i) {
        c[i] = static_cast<int>(local % q_);
        local /= q_;
    }
    return Poly(std::move(c));
}

std::vector<std::int64_t> sigma_table(const Field& F, const MonicIndex& idx) {
    std::vector<std::int64_t> sig(idx.size(), 0);
    const int D = idx.max_deg();
    std::vector<Poly> all;
    all.reserve(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) all.push_back(idx.poly(i));
    for (int dd = 0; dd <= D; ++dd) {
        std::int64_t nd = 1;
        for (int i = 0; i < dd; ++i) nd *= F.q();
        for (std::size_t a = idx.offset(dd); a < idx.offset(dd + 1); ++a) {
            for (std::size_t b = 0; b < idx.offset(D - dd + 1); ++b) sig[idx.index(poly::mul(F, all[a], all[b]))] += nd;
        }
    }
    return sig;
}

}  // namespace tc

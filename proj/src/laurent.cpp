#include "treecochain/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tc {

RatFunc::RatFunc(const Field& F, Poly n, Poly d) {
    if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (n.is_zero()) {
        num = Poly();
        den = poly::one();
        return;
    }
    Poly g = poly::gcd(F, n, d);
    n = poly::div_exact(F, n, g);
    d = poly::div_exact(F, d, g);
    int li = F.inv(d.lead());
    num = poly::scale(F, n, li);
    den = poly::scale(F, d, li);
}

namespace rf {

RatFunc add(const Field& F, const RatFunc& a, const RatFunc& b) {
    if (a.den == b.den) return RatFunc(F, poly::add(F, a.num, b.num), a.den);
    return RatFunc(F, poly::add(F, poly::mul(F, a.num, b.den), poly::mul(F, b.num, a.den)), poly::mul(F, a.den, b.den));
}

RatFunc sub(const Field& F, const RatFunc& a, const RatFunc& b) { return add(F, a, neg(F, b)); }

RatFunc neg(const Field& F, const RatFunc& a) {
    RatFunc r = a;
    r.num = poly::neg(F, a.num);
    return r;
}

RatFunc mul(const Field& F, const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    return RatFunc(F, poly::mul(F, a.num, b.num), poly::mul(F, a.den, b.den));
}

RatFunc inv(const Field& F, const RatFunc& a) {
    if (a.is_zero()) throw std::domain_error("inverse of zero rational function");
    return RatFunc(F, a.den, a.num);
}

RatFunc div(const Field& F, const RatFunc& a, const RatFunc& b) { return mul(F, a, inv(F, b)); }

RatFunc pi_pow(int k) {
    RatFunc r;
    if (k >= 0) {
        r.num = poly::one();
        r.den = poly::monomial(1, k);
    } else {
        r.num = poly::monomial(1, -k);
    }
    return r;
}

int ord_inf(const RatFunc& a) {
    if (a.is_zero()) return kOrdInfinity;
    return a.den.deg() - a.num.deg();
}

std::vector<int> expand(const Field& F, const RatFunc& a, int i0, int i1) {
    std::vector<int> out(std::max(0, i1 - i0 + 1), 0);
    if (a.is_zero() || i1 < i0) return out;
    const int o = ord_inf(a);
    if (i1 < o) return out;
    // a = pi^o * rev(num)(pi) / rev(den)(pi), rev(den)(0) = 1
    const int dn = a.num.deg(), dd = a.den.deg();
    const int terms = i1 - o + 1;
    std::vector<int> rn(terms, 0), rd(terms, 0), s(terms, 0);
    for (int t = 0; t < terms && t <= dn; ++t) rn[t] = a.num.c[dn - t];
    for (int t = 0; t < terms && t <= dd; ++t) rd[t] = a.den.c[dd - t];
    for (int t = 0; t < terms; ++t) {
        int v = rn[t];
        for (int i = 1; i <= t && i <= dd; ++i) v = F.sub(v, F.mul(rd[i], s[t - i]));
        s[t] = v;  // rd[0] = 1
    }
    for (int i = std::max(i0, o); i <= i1; ++i) out[i - i0] = s[i - o];
    return out;
}

std::string str(const Field& F, const RatFunc& a) {
    if (a.is_poly()) return poly::str(F, a.num);
    return "(" + poly::str(F, a.num) + ")/(" + poly::str(F, a.den) + ")";
}

}  // namespace rf

void LaurentPoly::normalize() {
    std::size_t first = 0;
    while (first < c.size() && c[first] == 0) ++first;
    if (first == c.size()) {
        c.clear();
        lo = 0;
        return;
    }
    if (first) {
        c.erase(c.begin(), c.begin() + static_cast<long>(first));
        lo += static_cast<int>(first);
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool LaurentPoly::operator<(const LaurentPoly& o) const {
    if (lo != o.lo) return lo < o.lo;
    return c < o.c;
}

namespace laurent {

namespace {

template <class Op>
LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, Op op) {
    if (a.is_zero() && b.is_zero()) return LaurentPoly();
    int lo = std::min(a.is_zero() ? b.lo : a.lo, b.is_zero() ? a.lo : b.lo);
    int hi = std::max(a.is_zero() ? b.hi() : a.hi(), b.is_zero() ? a.hi() : b.hi());
    std::vector<int> c(hi - lo + 1);
    for (int i = lo; i <= hi; ++i) c[i - lo] = op(a.coef(i), b.coef(i));
    return LaurentPoly(lo, std::move(c));
}

}  // namespace

LaurentPoly add(const Field& F, const LaurentPoly& a, const LaurentPoly& b) {
    return combine(a, b, [&](int x, int y) { return F.add(x, y); });
}

LaurentPoly sub(const Field& F, const LaurentPoly& a, const LaurentPoly& b) {
    return combine(a, b, [&](int x, int y) { return F.sub(x, y); });
}

LaurentPoly neg(const Field& F, const LaurentPoly& a) {
    LaurentPoly r = a;
    for (int& x : r.c) x = F.neg(x);
    return r;
}

LaurentPoly scale(const Field& F, const LaurentPoly& a, int s) {
    LaurentPoly r = a;
    for (int& x : r.c) x = F.mul(x, s);
    r.normalize();
    return r;
}

LaurentPoly mul(const Field& F, const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPoly();
    std::vector<int> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
    return LaurentPoly(a.lo + b.lo, std::move(c));
}

LaurentPoly truncate(const LaurentPoly& a, int below) {
    if (a.is_zero() || a.lo >= below) return LaurentPoly();
    if (a.hi() < below) return a;
    return LaurentPoly(a.lo, std::vector<int>(a.c.begin(), a.c.begin() + (below - a.lo)));
}

Poly poly_part(const LaurentPoly& a) {
    if (a.is_zero() || a.lo > 0) return Poly();
    std::vector<int> c(-a.lo + 1, 0);
    for (int i = a.lo; i <= 0; ++i) c[-i] = a.coef(i);
    return Poly(std::move(c));
}

LaurentPoly frac_part(const LaurentPoly& a) {
    if (a.is_zero() || a.hi() < 1) return LaurentPoly();
    int lo = std::max(a.lo, 1);
    std::vector<int> c;
    for (int i = lo; i <= a.hi(); ++i) c.push_back(a.coef(i));
    return LaurentPoly(lo, std::move(c));
}

LaurentPoly from_poly(const Poly& p) {
    if (p.is_zero()) return LaurentPoly();
    std::vector<int> c(p.c.rbegin(), p.c.rend());
    return LaurentPoly(-p.deg(), std::move(c));
}

LaurentPoly from_ratfunc(const Field& F, const RatFunc& a, int below) {
    int o = rf::ord_inf(a);
    if (o == kOrdInfinity || o >= below) return LaurentPoly();
    return LaurentPoly(o, rf::expand(F, a, o, below - 1));
}

RatFunc to_ratfunc(const Field& F, const LaurentPoly& a) {
    if (a.is_zero()) return RatFunc();
    // sum c_i T^(-i) = (sum c_i T^(h - i)) / T^h with h = max(0, hi)
    int h = std::max(0, a.hi());
    std::vector<int> n(h - a.lo + 1, 0);
    for (int i = a.lo; i <= a.hi(); ++i) n[h - i] = a.coef(i);
    return RatFunc(F, Poly(std::move(n)), poly::monomial(1, h));
}

LaurentPoly inverse(const Field& F, const LaurentPoly& a, int below) {
    if (a.is_zero()) throw std::domain_error("inverse of zero Laurent polynomial");
    const int o = a.lo;
    const int terms = below + o;  // exponents -o .. below-1
    if (terms <= 0) return LaurentPoly();
    std::vector<int> s(terms, 0);
    const int i0 = F.inv(a.c[0]);
    for (int t = 0; t < terms; ++t) {
        int v = (t == 0) ? 1 : 0;
        for (int i = 1; i <= t && i < static_cast<int>(a.c.size()); ++i) v = F.sub(v, F.mul(a.c[i], s[t - i]));
        s[t] = F.mul(v, i0);
    }
    return LaurentPoly(-o, std::move(s));
}

std::string str(const Field& F, const LaurentPoly& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = a.lo; i <= a.hi(); ++i) {
        int c = a.coef(i);
        if (c == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << F.str(c, true);
            continue;
        }
        if (c != 1) os << F.str(c, true) << '*';
        if (i < 0) {
            os << 'T';
            if (i < -1) os << '^' << -i;
        } else {
            os << "pi";
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

LaurentPoly parse(const Field& F, const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty Laurent text");
    LaurentPoly acc;
    std::vector<std::string> terms;
    {
        int depth = 0;
        std::string cur;
        for (char ch : s) {
            if (ch == '(') ++depth;
            if (ch == ')') --depth;
            if (ch == '+' && depth == 0) {
                terms.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        terms.push_back(cur);
    }
    auto digits_only = [](const std::string& x) {
        return !x.empty() && std::all_of(x.begin(), x.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    };
    for (const std::string& term : terms) {
        if (term.empty()) throw std::invalid_argument("malformed Laurent text: '" + s + "'");
        std::string coef = "1", mono = term;
        auto star = term.rfind('*');
        if (star != std::string::npos) {
            coef = term.substr(0, star);
            mono = term.substr(star + 1);
        }
        int e = 0;
        if (mono.rfind("pi", 0) == 0) {
            if (mono.size() == 2) e = 1;
            else if (mono[2] == '^' && digits_only(mono.substr(3))) e = std::stoi(mono.substr(3));
            else throw std::invalid_argument("malformed term: '" + term + "'");
        } else if (!mono.empty() && mono[0] == 'T') {
            if (mono.size() == 1) e = -1;
            else if (mono[1] == '^' && digits_only(mono.substr(2))) e = -std::stoi(mono.substr(2));
            else throw std::invalid_argument("malformed term: '" + term + "'");
        } else {
            if (star != std::string::npos) throw std::invalid_argument("malformed term: '" + term + "'");
            coef = mono;
        }
        acc = add(F, acc, LaurentPoly(e, {F.parse(coef)}));
    }
    if (str(F, acc) != s) throw std::invalid_argument("non-canonical Laurent text: '" + s + "'");
    return acc;
}

}  // namespace laurent

}  // namespace tc

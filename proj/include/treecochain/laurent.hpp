#pragma once

#include <climits>
#include <string>
#include <vector>

#include "treecochain/poly.hpp"

namespace tc {

constexpr int kOrdInfinity = INT_MAX;

/// Exact element of F = F_q(T), kept as num/den with den monic and
/// gcd(num, den) = 1. Laurent expansions at infinity (pi = 1/T) are
/// produced on demand; no precision is ever fixed globally.
struct RatFunc {
    Poly num;
    Poly den = poly::one();

    RatFunc() = default;
    explicit RatFunc(Poly n) : num(std::move(n)) {}
    RatFunc(const Field& F, Poly n, Poly d);  // normalizes

    bool is_zero() const { return num.is_zero(); }
    bool is_poly() const { return den.is_one(); }
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

namespace rf {

RatFunc add(const Field& F, const RatFunc& a, const RatFunc& b);
RatFunc sub(const Field& F, const RatFunc& a, const RatFunc& b);
RatFunc neg(const Field& F, const RatFunc& a);
RatFunc mul(const Field& F, const RatFunc& a, const RatFunc& b);
RatFunc inv(const Field& F, const RatFunc& a);
RatFunc div(const Field& F, const RatFunc& a, const RatFunc& b);
/// pi^k = T^(-k).
RatFunc pi_pow(int k);

/// ord_inf(num/den) = deg den - deg num; kOrdInfinity for zero.
int ord_inf(const RatFunc& a);

/// Coefficients a_i of pi^i for i in [i0, i1].
std::vector<int> expand(const Field& F, const RatFunc& a, int i0, int i1);

std::string str(const Field& F, const RatFunc& a);

}  // namespace rf

/// Finite Laurent polynomial in pi: sum of c[j] pi^(lo + j). Canonical:
/// no zero coefficient at either end; zero has lo = 0 and empty c.
struct LaurentPoly {
    int lo = 0;
    std::vector<int> c;

    LaurentPoly() = default;
    LaurentPoly(int lo_, std::vector<int> coeffs) : lo(lo_), c(std::move(coeffs)) { normalize(); }

    bool is_zero() const { return c.empty(); }
    int ord() const { return c.empty() ? kOrdInfinity : lo; }
    /// Largest exponent present; only meaningful when nonzero.
    int hi() const { return lo + static_cast<int>(c.size()) - 1; }
    int coef(int i) const {
        int j = i - lo;
        return (j >= 0 && j < static_cast<int>(c.size())) ? c[j] : 0;
    }
    void normalize();
    bool operator==(const LaurentPoly& o) const { return lo == o.lo && c == o.c; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
    bool operator<(const LaurentPoly& o) const;
};

namespace laurent {

LaurentPoly add(const Field& F, const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly sub(const Field& F, const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly neg(const Field& F, const LaurentPoly& a);
LaurentPoly mul(const Field& F, const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly scale(const Field& F, const LaurentPoly& a, int s);
/// Keep only terms pi^i with i < below.
LaurentPoly truncate(const LaurentPoly& a, int below);
/// Terms with exponent <= 0, as a polynomial in T.
Poly poly_part(const LaurentPoly& a);
/// Terms with exponent >= 1.
LaurentPoly frac_part(const LaurentPoly& a);
LaurentPoly from_poly(const Poly& p);
/// Expansion of an exact rational function, truncated below `below`.
LaurentPoly from_ratfunc(const Field& F, const RatFunc& a, int below);
RatFunc to_ratfunc(const Field& F, const LaurentPoly& a);
/// 1/a modulo pi^below (a nonzero).
LaurentPoly inverse(const Field& F, const LaurentPoly& a, int below);

/// "T^2+2*T+1+pi+2*pi^3": ascending powers of pi, pi^(-j) written T^j.
std::string str(const Field& F, const LaurentPoly& a);
/// Strict inverse of str().
LaurentPoly parse(const Field& F, const std::string& s);

}  // namespace laurent

}  // namespace tc

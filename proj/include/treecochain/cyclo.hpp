#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treecochain/laurent.hpp"

namespace tc {

using i128 = __int128;

std::string i128_str(i128 v);
i128 i128_parse(const std::string& s);

/// Which coefficient ring a scalar lives in: Z[1/p][zeta_p] (modulus 0)
/// or (Z/M)[zeta_p] with gcd(M, p) = 1.
struct ScalarRing {
    int p = 2;
    std::int64_t modulus = 0;

    bool exact() const { return modulus == 0; }
    bool operator==(const ScalarRing& o) const { return p == o.p && modulus == o.modulus; }
    bool operator!=(const ScalarRing& o) const { return !(*this == o); }

    static ScalarRing exact_ring(int p) { return {p, 0}; }
    /// Throws if gcd(M, p) != 1 or M < 2.
    static ScalarRing mod_ring(int p, std::int64_t M);
};

/// Element of the cyclotomic coefficient ring, stored by its p-1
/// coordinates in the basis 1, zeta, ..., zeta^(p-2) (reduction modulo
/// the p-th cyclotomic polynomial). In exact mode the value is
/// coords / p^v with v >= 0 minimal. Integer overflow throws.
class CycloRat {
public:
    CycloRat() : CycloRat(ScalarRing{}) {}
    explicit CycloRat(const ScalarRing& R);

    static CycloRat from_int(const ScalarRing& R, i128 n);
    /// n / p^v (exact mode), or n * p^(-v) in mod mode.
    static CycloRat rational(const ScalarRing& R, i128 n, int v);
    static CycloRat zeta_pow(const ScalarRing& R, long long t);
    /// Raw constructor from coordinates (length p-1) and p-adic exponent.
    static CycloRat from_coords(const ScalarRing& R, std::vector<i128> coords, int v);

    const ScalarRing& ring() const { return R_; }
    const std::vector<i128>& coords() const { return c_; }
    int den_exp() const { return v_; }

    bool is_zero() const;
    /// Only the coordinate at zeta^0 can be nonzero.
    bool is_rational() const;
    /// Rational with denominator 1 (always true for rational mod-mode values).
    bool is_integer() const { return is_rational() && v_ == 0; }
    /// Integer value; throws unless is_integer().
    i128 to_integer() const;

    CycloRat operator+(const CycloRat& o) const;
    CycloRat operator-(const CycloRat& o) const;
    CycloRat operator-() const;
    CycloRat operator*(const CycloRat& o) const;
    CycloRat& operator+=(const CycloRat& o) { return *this = *this + o; }
    CycloRat& operator-=(const CycloRat& o) { return *this = *this - o; }
    CycloRat& operator*=(const CycloRat& o) { return *this = *this * o; }

    CycloRat mul_int(i128 k) const;
    /// Divides by p^k (always legal, p is a unit in both modes).
    CycloRat div_p_pow(int k) const;
    /// Divides by an integer d. Exact mode: d must divide the numerators
    /// (gcd(d, p) = 1 required). Mod mode: d must be a unit.
    CycloRat div_exact(i128 d) const;

    /// Image in (Z/M)[zeta]; only from exact mode, gcd(M, p) = 1.
    CycloRat reduce_mod(std::int64_t M) const;

    bool operator==(const CycloRat& o) const { return R_ == o.R_ && v_ == o.v_ && c_ == o.c_; }
    bool operator!=(const CycloRat& o) const { return !(*this == o); }

    /// "-8/3", "2+zeta^1" style rendering for humans.
    std::string str() const;

private:
    void canonicalize();
    ScalarRing R_;
    std::vector<i128> c_;
    int v_ = 0;
};

i128 checked_add(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);
i128 ipow(i128 b, int e);
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

/// eta(x) = zeta^(power * Tr(a_1)) where a_1 is the pi^1 coefficient of x.
/// power = 1 is the fixed character; other powers coprime to p give the
/// remaining nontrivial characters of F_p.
CycloRat eta(const Field& F, const ScalarRing& R, const LaurentPoly& x, int power = 1);

}  // namespace tc

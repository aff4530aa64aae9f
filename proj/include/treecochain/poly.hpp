#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "treecochain/field.hpp"

namespace tc {

/// Element of A = F_q[T]. Coefficients low-to-high, no trailing zeros;
/// the zero polynomial has an empty coefficient vector.
struct Poly {
    std::vector<int> c;

    Poly() = default;
    explicit Poly(std::vector<int> coeffs) : c(std::move(coeffs)) { trim(); }

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    int lead() const { return c.empty() ? 0 : c.back(); }
    int coef(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0; }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return c != o.c; }
    /// Degree first, then coefficients from the top down.
    bool operator<(const Poly& o) const;
};

namespace poly {

Poly constant(int a);
Poly monomial(int a, int d);
inline Poly one() { return constant(1); }
inline Poly T() { return monomial(1, 1); }

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly neg(const Field& F, const Poly& a);
Poly scale(const Field& F, const Poly& a, int s);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly shift(const Poly& a, int k);  // a * T^k, k >= 0

/// (quotient, remainder); throws on division by zero.
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
Poly mod(const Field& F, const Poly& a, const Poly& b);
/// Throws if b does not divide a.
Poly div_exact(const Field& F, const Poly& a, const Poly& b);
bool divides(const Field& F, const Poly& d, const Poly& a);

Poly monic(const Field& F, const Poly& a);
Poly gcd(const Field& F, const Poly& a, const Poly& b);

struct Xgcd {
    Poly g, s, t;  // g = s*a + t*b, g monic
};
Xgcd xgcd(const Field& F, const Poly& a, const Poly& b);

/// Inverse of a modulo m; throws unless gcd(a, m) = 1.
Poly inv_mod(const Field& F, const Poly& a, const Poly& m);

/// Chinese remaindering over pairwise coprime moduli (modulus, residue).
Poly crt(const Field& F, const std::vector<std::pair<Poly, Poly>>& pairs);

Poly powmod(const Field& F, const Poly& base, std::uint64_t e, const Poly& m);

bool is_irreducible(const Field& F, const Poly& f);

/// Monic irreducible factorization by trial division; fine for the
/// small degrees used here. Input must be nonzero.
std::vector<std::pair<Poly, int>> factor(const Field& F, const Poly& m);

bool is_squarefree(const Field& F, const Poly& m);

/// sum of |m'| over monic divisors m' of m.
std::int64_t sigma(const Field& F, const Poly& m);

/// |m| = q^deg m.
std::int64_t norm(const Field& F, const Poly& m);

int eval(const Field& F, const Poly& a, int x);

std::string str(const Field& F, const Poly& a);
/// Strict parser: the text must be exactly what str() prints.
Poly parse(const Field& F, const std::string& s);

/// All monic polynomials of degree exactly d, in index order.
std::vector<Poly> monics_of_degree(const Field& F, int d);

}  // namespace poly

/// Dense indexing of the monic polynomials of degree <= D: degree d
/// occupies [offset(d), offset(d) + q^d) and the local index is the
/// base-q number formed by the non-leading coefficients.
class MonicIndex {
public:
    MonicIndex(int q, int max_deg);
    int q() const { return q_; }
    int max_deg() const { return max_deg_; }
    std::size_t size() const { return offset_.back(); }
    std::size_t offset(int d) const { return offset_[d]; }
    std::size_t count(int d) const { return offset_[d + 1] - offset_[d]; }
    std::size_t index(const Poly& m) const;  // m monic, deg m <= max_deg
    Poly poly(std::size_t idx) const;
    int degree_of(std::size_t idx) const;

private:
    int q_, max_deg_;
    std::vector<std::size_t> offset_;
};

/// sigma(m) for every monic m of degree <= D, indexed by MonicIndex.
/// Built by a divisor sieve rather than factorization.
std::vector<std::int64_t> sigma_table(const Field& F, const MonicIndex& idx);

}  // namespace tc

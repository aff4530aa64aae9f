#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tc {

/// Finite field F_q, q = p^e.
///
/// Elements are encoded as integers in [0, q): the base-p digits of the
/// code are the coefficients of the element as a polynomial in the
/// generator g (root of the user supplied modulus). For e = 1 the code
/// is the residue itself. All operations go through precomputed tables.
class Field {
public:
    /// Prime field F_p.
    static std::shared_ptr<const Field> prime(int p);

    /// Extension F_p[g]/(modulus). `modulus` is low-to-high over F_p,
    /// monic of degree e >= 2, and must be irreducible.
    static std::shared_ptr<const Field> extension(int p, const std::vector<int>& modulus);

    /// Dispatch helper: an empty modulus means the prime field F_q.
    static std::shared_ptr<const Field> make(int q, const std::vector<int>& modulus);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int inv(int a) const {
        if (a == 0) throw std::domain_error("inverse of zero in F_q");
        return inv_[a];
    }
    int pow(int a, std::uint64_t k) const;

    /// Tr_{F_q/F_p}(a), returned as a residue in [0, p).
    int trace(int a) const { return trace_[a]; }

    /// Image of an integer in the prime subfield.
    int from_int(long long v) const;

    /// "2", "g", "g^2+2*g+1". `as_factor` wraps sums in parentheses.
    std::string str(int a, bool as_factor = false) const;

    /// Inverse of str(); throws std::invalid_argument on non-canonical text.
    int parse(const std::string& s) const;

    bool operator==(const Field& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

private:
    Field(int p, std::vector<int> modulus);
    void build();

    int p_ = 0;
    int e_ = 1;
    int q_ = 0;
    std::vector<int> modulus_;  // empty for prime fields
    std::vector<int> add_, mul_, neg_, inv_, trace_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime_int(long long n);

}  // namespace tc

#include "treecochain/cyclo.hpp"

#include <algorithm>
#include <stdexcept>

namespace tc {

std::string i128_str(i128 v) {
    if (v == 0) return "0";
    bool negv = v < 0;
    unsigned __int128 u = negv ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    std::string s;
    while (u) {
        s += static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    if (negv) s += '-';
    std::reverse(s.begin(), s.end());
    return s;
}

i128 i128_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = 0;
    bool negv = false;
    if (s[0] == '-') {
        negv = true;
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("malformed integer");
    i128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer '" + s + "'");
        v = checked_add(checked_mul(v, 10), s[i] - '0');
    }
    return negv ? -v : v;
}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in exact arithmetic");
    return r;
}

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in exact arithmetic");
    return r;
}

i128 ipow(i128 b, int e) {
    i128 r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, b);
    return r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
    while (a1) {
        std::int64_t qt = g / a1;
        std::int64_t t = g - qt * a1;
        g = a1;
        a1 = t;
        t = x - qt * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw std::domain_error("not a unit modulo " + std::to_string(m));
    return ((x % m) + m) % m;
}

ScalarRing ScalarRing::mod_ring(int p, std::int64_t M) {
    if (M < 2) throw std::invalid_argument("modulus must be >= 2");
    std::int64_t a = M, b = p;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    if (a != 1) throw std::invalid_argument("modulus must be coprime to p");
    return {p, M};
}

CycloRat::CycloRat(const ScalarRing& R) : R_(R), c_(R.p - 1, 0), v_(0) {}

CycloRat CycloRat::from_int(const ScalarRing& R, i128 n) { return rational(R, n, 0); }

CycloRat CycloRat::rational(const ScalarRing& R, i128 n, int v) {
    CycloRat x(R);
    x.c_[0] = n;
    x.v_ = v;
    x.canonicalize();
    return x;
}

CycloRat CycloRat::zeta_pow(const ScalarRing& R, long long t) {
    const int p = R.p;
    long long e = ((t % p) + p) % p;
    CycloRat x(R);
    if (e < p - 1) {
        x.c_[e] = 1;
    } else {
        for (auto& c : x.c_) c = -1;  // zeta^(p-1) = -(1 + ... + zeta^(p-2))
    }
    x.canonicalize();
    return x;
}

CycloRat CycloRat::from_coords(const ScalarRing& R, std::vector<i128> coords, int v) {
    if (static_cast<int>(coords.size()) != R.p - 1) throw std::invalid_argument("coordinate vector has wrong length");
    CycloRat x(R);
    x.c_ = std::move(coords);
    x.v_ = v;
    x.canonicalize();
    return x;
}

void CycloRat::canonicalize() {
    if (R_.exact()) {
        if (v_ < 0) {
            i128 s = ipow(R_.p, -v_);
            for (auto& c : c_) c = checked_mul(c, s);
            v_ = 0;
        }
        while (v_ > 0 && std::all_of(c_.begin(), c_.end(), [&](i128 c) { return c % R_.p == 0; })) {
            for (auto& c : c_) c /= R_.p;
            --v_;
        }
        if (is_zero()) v_ = 0;
    } else {
        const i128 M = R_.modulus;
        if (v_ != 0) {
            std::int64_t pm = static_cast<std::int64_t>(((R_.p % M) + M) % M);
            std::int64_t f = v_ > 0 ? mod_inverse(pm, R_.modulus) : pm;
            std::int64_t fk = 1;
            for (int i = 0; i < std::abs(v_); ++i) fk = static_cast<std::int64_t>((static_cast<i128>(fk) * f) % M);
            for (auto& c : c_) c = ((c % M) * fk) % M;
            v_ = 0;
        }
        for (auto& c : c_) c = ((c % M) + M) % M;
    }
}

bool CycloRat::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](i128 c) { return c == 0; });
}

bool CycloRat::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](i128 c) { return c == 0; });
}

i128 CycloRat::to_integer() const {
    if (!is_integer()) throw std::domain_error("scalar is not an integer: " + str());
    return c_[0];
}

namespace {

void check_same(const ScalarRing& a, const ScalarRing& b) {
    if (a != b) throw std::invalid_argument("scalars from different coefficient rings");
}

}  // namespace

CycloRat CycloRat::operator+(const CycloRat& o) const {
    check_same(R_, o.R_);
    CycloRat r(R_);
    int v = std::max(v_, o.v_);
    i128 sa = R_.exact() ? ipow(R_.p, v - v_) : 1, sb = R_.exact() ? ipow(R_.p, v - o.v_) : 1;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = checked_add(checked_mul(c_[i], sa), checked_mul(o.c_[i], sb));
    r.v_ = R_.exact() ? v : 0;
    r.canonicalize();
    return r;
}

CycloRat CycloRat::operator-() const {
    CycloRat r = *this;
    for (auto& c : r.c_) c = -c;
    r.canonicalize();
    return r;
}

CycloRat CycloRat::operator-(const CycloRat& o) const { return *this + (-o); }

CycloRat CycloRat::operator*(const CycloRat& o) const {
    check_same(R_, o.R_);
    const int p = R_.p;
    std::vector<i128> full(p, 0);
    const bool modm = !R_.exact();
    for (int i = 0; i < p - 1; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < p - 1; ++j) {
            if (o.c_[j] == 0) continue;
            i128 t = checked_mul(c_[i], o.c_[j]);
            int k = (i + j) % p;
            full[k] = checked_add(full[k], t);
            if (modm) full[k] %= R_.modulus;
        }
    }
    CycloRat r(R_);
    for (int i = 0; i < p - 1; ++i) r.c_[i] = checked_add(full[i], -full[p - 1]);
    r.v_ = R_.exact() ? v_ + o.v_ : 0;
    r.canonicalize();
    return r;
}

CycloRat CycloRat::mul_int(i128 k) const {
    CycloRat r = *this;
    for (auto& c : r.c_) c = checked_mul(c, R_.exact() ? k : k % R_.modulus);
    r.canonicalize();
    return r;
}

CycloRat CycloRat::div_p_pow(int k) const {
    CycloRat r = *this;
    r.v_ += k;
    r.canonicalize();
    return r;
}

CycloRat CycloRat::div_exact(i128 d) const {
    if (d == 0) throw std::domain_error("division by zero");
    CycloRat r = *this;
    if (R_.exact()) {
        if (d % R_.p == 0) throw std::domain_error("div_exact: divisor must be coprime to p");
        for (auto& c : r.c_) {
            if (c % d != 0) throw std::domain_error("div_exact: value not divisible by " + i128_str(d));
            c /= d;
        }
    } else {
        std::int64_t inv = mod_inverse(static_cast<std::int64_t>(((d % R_.modulus) + R_.modulus) % R_.modulus), R_.modulus);
        for (auto& c : r.c_) c = (c * inv) % R_.modulus;
    }
    r.canonicalize();
    return r;
}

CycloRat CycloRat::reduce_mod(std::int64_t M) const {
    if (!R_.exact()) throw std::invalid_argument("reduce_mod expects an exact scalar");
    ScalarRing S = ScalarRing::mod_ring(R_.p, M);
    CycloRat r(S);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] % M;
    r.v_ = v_;
    r.canonicalize();
    return r;
}

std::string CycloRat::str() const {
    std::string s;
    if (is_rational()) {
        s = i128_str(c_[0]);
    } else {
        s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += i128_str(c_[i]);
        }
        s += "]";
    }
    if (R_.exact() && v_ > 0) {
        s += "/" + std::to_string(R_.p);
        if (v_ > 1) s += "^" + std::to_string(v_);
    }
    if (!R_.exact()) s += " mod " + std::to_string(R_.modulus);
    return s;
}

CycloRat eta(const Field& F, const ScalarRing& R, const LaurentPoly& x, int power) {
    if (R.p != F.p()) throw std::invalid_argument("coefficient ring characteristic mismatch");
    return CycloRat::zeta_pow(R, static_cast<long long>(power) * F.trace(x.coef(1)));
}

}  // namespace tc

#include "treecochain/field.hpp"

#include <sstream>

namespace tc {

bool is_prime_int(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

constexpr int kMaxOrder = 1024;

std::vector<int> digits(int code, int p, int e) {
    std::vector<int> d(e);
    for (int i = 0; i < e; ++i) {
        d[i] = code % p;
        code /= p;
    }
    return d;
}

int encode(const std::vector<int>& d, int p) {
    int code = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) code = code * p + d[i];
    return code;
}

}  // namespace

std::shared_ptr<const Field> Field::prime(int p) {
    if (!is_prime_int(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    if (p > kMaxOrder) throw std::invalid_argument("field too large for table arithmetic");
    auto f = std::shared_ptr<Field>(new Field(p, {}));
    f->build();
    return f;
}

std::shared_ptr<const Field> Field::extension(int p, const std::vector<int>& modulus) {
    if (!is_prime_int(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    if (modulus.size() < 3) throw std::invalid_argument("extension modulus must have degree >= 2");
    if (modulus.back() != 1) throw std::invalid_argument("extension modulus must be monic");
    long long order = 1;
    for (std::size_t i = 1; i < modulus.size(); ++i) {
        order *= p;
        if (order > kMaxOrder) throw std::invalid_argument("field too large for table arithmetic");
    }
    for (int c : modulus)
        if (c < 0 || c >= p) throw std::invalid_argument("modulus coefficient out of range");
    auto f = std::shared_ptr<Field>(new Field(p, modulus));
    f->build();
    return f;
}

std::shared_ptr<const Field> Field::make(int q, const std::vector<int>& modulus) {
    if (modulus.empty()) return prime(q);
    int p = 2;
    while (q % p != 0) ++p;
    auto f = extension(p, modulus);
    if (f->q() != q) throw std::invalid_argument("modulus degree does not match q");
    return f;
}

Field::Field(int p, std::vector<int> modulus) : p_(p), modulus_(std::move(modulus)) {
    e_ = modulus_.empty() ? 1 : static_cast<int>(modulus_.size()) - 1;
    q_ = 1;
    for (int i = 0; i < e_; ++i) q_ *= p_;
}

void Field::build() {
    const int q = q_, p = p_, e = e_;
    add_.assign(q * q, 0);
    mul_.assign(q * q, 0);
    neg_.assign(q, 0);
    inv_.assign(q, 0);
    trace_.assign(q, 0);
    std::vector<std::vector<int>> dig(q);
    for (int a = 0; a < q; ++a) dig[a] = digits(a, p, e);
    for (int a = 0; a < q; ++a) {
        std::vector<int> n(e);
        for (int i = 0; i < e; ++i) n[i] = (p - dig[a][i]) % p;
        neg_[a] = encode(n, p);
        for (int b = 0; b < q; ++b) {
            std::vector<int> s(e);
            for (int i = 0; i < e; ++i) s[i] = (dig[a][i] + dig[b][i]) % p;
            add_[a * q + b] = encode(s, p);
            // schoolbook product, then reduce by the monic modulus
            std::vector<int> prod(2 * e - 1, 0);
            for (int i = 0; i < e; ++i)
                for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + dig[a][i] * dig[b][j]) % p;
            for (int t = 2 * e - 2; t >= e; --t) {
                int c = prod[t];
                if (c == 0) continue;
                for (int i = 0; i <= e; ++i) prod[t - e + i] = ((prod[t - e + i] - c * modulus_[i]) % p + p) % p;
            }
            prod.resize(e);
            mul_[a * q + b] = encode(prod, p);
        }
    }
    // a field iff every nonzero element is invertible; this is the irreducibility check
    for (int a = 1; a < q; ++a) {
        int found = -1;
        for (int b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) {
                found = b;
                break;
            }
        if (found < 0) throw std::invalid_argument("extension modulus is not irreducible over F_p");
        inv_[a] = found;
    }
    for (int a = 1; a < q; ++a)
        if (pow(a, q - 1) != 1) throw std::logic_error("multiplicative group order check failed");
    for (int a = 0; a < q; ++a) {
        int t = 0, x = a;
        for (int i = 0; i < e; ++i) {
            t = add(t, x);
            x = pow(x, p);
        }
        if (t >= p) throw std::logic_error("trace left the prime field");
        trace_[a] = t;
    }
}

int Field::pow(int a, std::uint64_t k) const {
    int r = 1, b = a;
    while (k) {
        if (k & 1) r = mul(r, b);
        b = mul(b, b);
        k >>= 1;
    }
    return r;
}

int Field::from_int(long long v) const {
    long long r = v % p_;
    if (r < 0) r += p_;
    return static_cast<int>(r);
}

std::string Field::str(int a, bool as_factor) const {
    if (e_ == 1) return std::to_string(a);
    auto d = digits(a, p_, e_);
    std::ostringstream os;
    int terms = 0;
    for (int i = e_ - 1; i >= 0; --i) {
        if (d[i] == 0) continue;
        if (terms++) os << '+';
        if (i == 0) {
            os << d[i];
        } else {
            if (d[i] != 1) os << d[i] << '*';
            os << 'g';
            if (i > 1) os << '^' << i;
        }
    }
    if (terms == 0) return "0";
    std::string s = os.str();
    if (as_factor && terms > 1) return "(" + s + ")";
    return s;
}

int Field::parse(const std::string& s) const {
    std::string body = s;
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    for (int a = 0; a < q_; ++a)
        if (str(a) == body) return a;
    throw std::invalid_argument("not a canonical F_q element: '" + s + "'");
}

}  // namespace tc

#include "treecochain/cochain.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

namespace tc {

FourierData::FourierData(FieldPtr F, ScalarRing R, Poly level, int depth)
    : c0(R), pairing(R), F_(std::move(F)), R_(R), level_(std::move(level)), depth_(depth) {
    if (depth < 0) throw std::invalid_argument("depth must be non-negative");
    if (R_.p != F_->p()) throw std::invalid_argument("coefficient ring characteristic mismatch");
    idx_ = std::make_shared<MonicIndex>(F_->q(), depth);
    num_.assign(idx_->size() * (R_.p - 1), 0);
}

CycloRat FourierData::star(const Poly& m) const {
    if (m.deg() > depth_) throw DepthError("insufficient Fourier depth");
    return star_at(idx_->index(m));
}

CycloRat FourierData::star_at(std::size_t i) const {
    const std::size_t w = R_.p - 1;
    std::vector<i128> c(num_.begin() + i * w, num_.begin() + (i + 1) * w);
    return CycloRat::from_coords(R_, std::move(c), R_.exact() ? V_ : 0);
}

void FourierData::set_star_at(std::size_t i, const CycloRat& v) {
    if (v.ring() != R_) throw std::invalid_argument("scalar from a different coefficient ring");
    const std::size_t w = R_.p - 1;
    if (R_.exact() && v.den_exp() > V_) {
        i128 s = ipow(R_.p, v.den_exp() - V_);
        for (auto& x : num_) x = checked_mul(x, s);
        V_ = v.den_exp();
    }
    i128 s = R_.exact() ? ipow(R_.p, V_ - v.den_exp()) : 1;
    for (std::size_t j = 0; j < w; ++j) num_[i * w + j] = checked_mul(v.coords()[j], s);
}

bool FourierData::rational() const {
    const std::size_t w = R_.p - 1;
    for (std::size_t i = 0; i < num_.size(); ++i)
        if (i % w != 0 && num_[i] != 0) return false;
    return true;
}

void FourierData::normalize() {
    if (!R_.exact()) return;
    while (V_ > 0 && std::all_of(num_.begin(), num_.end(), [&](i128 x) { return x % R_.p == 0; })) {
        for (auto& x : num_) x /= R_.p;
        --V_;
    }
}

CycloRat FourierData::degree_sum(int d) const {
    const std::size_t w = R_.p - 1;
    std::vector<i128> acc(w, 0);
    for (std::size_t i = idx_->offset(d); i < idx_->offset(d + 1); ++i)
        for (std::size_t j = 0; j < w; ++j) acc[j] = checked_add(acc[j], num_[i * w + j]);
    return CycloRat::from_coords(R_, acc, R_.exact() ? V_ : 0);
}

bool FourierData::operator==(const FourierData& o) const {
    if (!(*F_ == *o.F_) || R_ != o.R_ || level_ != o.level_ || depth_ != o.depth_ || c0 != o.c0 || pairing != o.pairing)
        return false;
    for (std::size_t i = 0; i < idx_->size(); ++i)
        if (star_at(i) != o.star_at(i)) return false;
    return true;
}

namespace cochain {

namespace {

const Field& checked_field(const FourierData& a, const FourierData& b) {
    if (!(a.field() == b.field()) || a.ring() != b.ring()) throw std::invalid_argument("incompatible Fourier data");
    return a.field();
}

std::int64_t qpow(const Field& F, int d) {
    std::int64_t r = 1;
    for (int i = 0; i < d; ++i) r *= F.q();
    return r;
}

// Copies entry i of src into entry j of dst, times k.
void copy_entry(const FourierData& src, std::size_t i, FourierData& dst, std::size_t j, i128 k) {
    const std::size_t w = src.ring().p - 1;
    const auto& s = src.numerators();
    auto& d = dst.numerators();
    const bool modm = !src.ring().exact();
    for (std::size_t t = 0; t < w; ++t) {
        i128 v = checked_mul(s[i * w + t], k);
        d[j * w + t] = modm ? v % src.ring().modulus : v;
    }
}

void add_entry(const FourierData& src, std::size_t i, FourierData& dst, std::size_t j) {
    const std::size_t w = src.ring().p - 1;
    const auto& s = src.numerators();
    auto& d = dst.numerators();
    for (std::size_t t = 0; t < w; ++t) {
        d[j * w + t] = checked_add(d[j * w + t], s[i * w + t]);
        if (!src.ring().exact()) d[j * w + t] %= src.ring().modulus;
    }
}

void check_prime(const Field& F, const Poly& p) {
    if (p.deg() < 1 || p.lead() != 1 || !poly::is_irreducible(F, p)) throw std::invalid_argument("operator needs a monic prime");
}

}  // namespace

CycloRat eval_positive(const FourierData& f, int k, const LaurentPoly& u, const EvalOptions& opt) {
    const Field& F = f.field();
    const ScalarRing& R = f.ring();
    if (k - 2 > f.depth()) throw DepthError("insufficient Fourier depth");
    const int e = F.e();
    CycloRat val = f.c0.div_p_pow(e * k);
    if (k < 2) return val;
    const std::size_t w = R.p - 1;
    const auto& num = f.numerators();
    const MonicIndex& idx = f.index();
    const int q = F.q();

    if (opt.reference) {
        // every nonzero m, explicit eta(m u)
        for (int d = 0; d <= k - 2; ++d) {
            CycloRat acc(R);
            for (std::size_t i = idx.offset(d); i < idx.offset(d + 1); ++i) {
                CycloRat s = f.star_at(i);
                if (s.is_zero()) continue;
                Poly m = idx.poly(i);
                for (int c = 1; c < q; ++c) {
                    LaurentPoly mu = laurent::mul(F, laurent::from_poly(poly::scale(F, m, c)), u);
                    acc += s * eta(F, R, mu, opt.char_power);
                }
            }
            val += acc.div_p_pow(e * (k - 2 - d));
        }
        return val;
    }

    // Summing eta over the F_q^x multiples of m gives q - 1 when
    // t(m) = a_1(m u) vanishes and -1 otherwise, for any nontrivial
    // character. So each degree contributes q * S_zero - S_all.
    const bool rat = f.rational();
    const std::size_t wc = rat ? 1 : w;
    std::vector<int> uc(k + 1, 0);
    for (int j = 1; j < k; ++j) uc[j] = u.coef(j);
    for (int d = 0; d <= k - 2; ++d) {
        std::vector<i128> s_all(wc, 0), s_zero(wc, 0);
        const int h = std::min(d, 7);
        const std::size_t nlow = static_cast<std::size_t>(qpow(F, h));
        std::vector<int> tlow(nlow, 0);
        std::size_t blk = 1;
        for (int j = 0; j < h; ++j) {
            for (std::size_t i = 0; i < blk; ++i)
                for (int c = 1; c < q; ++c) tlow[i + c * blk] = F.add(tlow[i], F.mul(c, uc[j + 1]));
            blk *= q;
        }
        const std::size_t nhigh = static_cast<std::size_t>(qpow(F, d - h));
        const std::size_t base = idx.offset(d);
        std::vector<int> digits(d - h, 0);
        for (std::size_t hi = 0; hi < nhigh; ++hi) {
            if (hi) {
                for (int j = 0; j < d - h; ++j) {
                    if (++digits[j] < q) break;
                    digits[j] = 0;
                }
            }
            int th = uc[d + 1];
            for (int j = 0; j < d - h; ++j) th = F.add(th, F.mul(digits[j], uc[h + j + 1]));
            const int target = F.neg(th);
            const std::size_t row = base + hi * nlow;
            for (std::size_t lo = 0; lo < nlow; ++lo) {
                const i128* x = &num[(row + lo) * w];
                const bool z = tlow[lo] == target;
                for (std::size_t t = 0; t < wc; ++t) {
                    s_all[t] = checked_add(s_all[t], x[t]);
                    if (z) s_zero[t] = checked_add(s_zero[t], x[t]);
                }
            }
        }
        std::vector<i128> c(w, 0);
        for (std::size_t t = 0; t < wc; ++t) c[t] = checked_add(checked_mul(s_zero[t], q), -s_all[t]);
        CycloRat term = CycloRat::from_coords(R, c, R.exact() ? f.den_exp() : 0);
        val += term.div_p_pow(e * (k - 2 - d));
    }
    return val;
}

CycloRat eval(const FourierData& f, const TreeEdge& e, const EvalOptions& opt) {
    const Field& F = f.field();
    if (e.positive) {
        if (e.k - 2 <= f.depth()) return eval_positive(f, e.k, e.u, opt);
        if (!opt.pairing_route) throw DepthError("insufficient Fourier depth");
        auto p = tree::reduce_to_positive(F, tree::bar(e), f.level());
        return f.pairing - eval_positive(f, p.edge.k, p.edge.u, opt);
    }
    auto p = tree::reduce_to_positive(F, e, f.level());
    if (p.edge.k - 2 <= f.depth()) return eval_positive(f, p.edge.k, p.edge.u, opt);
    if (opt.pairing_route && e.k - 2 <= f.depth()) return f.pairing - eval_positive(f, e.k, e.u, opt);
    throw DepthError("insufficient Fourier depth");
}

Evaluator evaluator(const FourierData& f, EvalOptions opt) {
    return [&f, opt](const TreeEdge& e) { return eval(f, e, opt); };
}

namespace {

// Calls fn(u) for every u = sum_{i=1}^{k-1} a_i pi^i.
template <class Fn>
void for_each_tail(const Field& F, int k, Fn fn) {
    const int len = std::max(k - 1, 0);
    std::vector<int> a(len, 0);
    for (;;) {
        fn(LaurentPoly(1, a));
        int j = 0;
        while (j < len && ++a[j] == F.q()) a[j++] = 0;
        if (j == len) return;
    }
}

}  // namespace

CycloRat forward_star(const Field& F, const ScalarRing& R, const Evaluator& f, const Poly& m, int char_power) {
    if (m.is_zero() || m.lead() != 1) throw std::invalid_argument("forward_star needs monic m");
    const int k = 2 + m.deg();
    CycloRat acc(R);
    LaurentPoly mm = laurent::neg(F, laurent::from_poly(m));
    for_each_tail(F, k, [&](const LaurentPoly& u) {
        acc += f({k, u, true}) * eta(F, R, laurent::mul(F, mm, u), char_power);
    });
    return acc.div_p_pow(F.e() * (1 + m.deg()));
}

CycloRat forward_constant(const Field& F, const ScalarRing& R, const Evaluator& f, int k) {
    if (k <= 1) return f({k, LaurentPoly(), true});
    CycloRat acc(R);
    for_each_tail(F, k, [&](const LaurentPoly& u) { acc += f({k, u, true}); });
    return acc.div_p_pow(F.e() * (k - 1));
}

FourierData zero_like(const FourierData& f) { return FourierData(f.field_ptr(), f.ring(), f.level(), f.depth()); }

FourierData add(const FourierData& a, const FourierData& b) {
    checked_field(a, b);
    if (a.level() != b.level() || a.depth() != b.depth()) throw std::invalid_argument("adding Fourier data of different shape");
    FourierData r = zero_like(a);
    r.c0 = a.c0 + b.c0;
    r.pairing = a.pairing + b.pairing;
    const ScalarRing& R = a.ring();
    auto& rn = r.numerators();
    if (R.exact()) {
        int V = std::max(a.den_exp(), b.den_exp());
        i128 sa = ipow(R.p, V - a.den_exp()), sb = ipow(R.p, V - b.den_exp());
        for (std::size_t i = 0; i < rn.size(); ++i)
            rn[i] = checked_add(checked_mul(a.numerators()[i], sa), checked_mul(b.numerators()[i], sb));
        r.set_den_exp(V);
        r.normalize();
    } else {
        for (std::size_t i = 0; i < rn.size(); ++i) rn[i] = (a.numerators()[i] + b.numerators()[i]) % R.modulus;
    }
    return r;
}

FourierData scale(const FourierData& a, const CycloRat& s) {
    FourierData r = zero_like(a);
    r.c0 = a.c0 * s;
    r.pairing = a.pairing * s;
    if (s.is_rational()) {
        i128 n = s.coords()[0];
        auto& rn = r.numerators();
        for (std::size_t i = 0; i < rn.size(); ++i) {
            rn[i] = checked_mul(a.numerators()[i], n);
            if (!a.ring().exact()) rn[i] = (rn[i] % a.ring().modulus + a.ring().modulus) % a.ring().modulus;
        }
        r.set_den_exp(a.den_exp() + (a.ring().exact() ? s.den_exp() : 0));
        r.normalize();
        return r;
    }
    for (std::size_t i = 0; i < a.index().size(); ++i) r.set_star_at(i, a.star_at(i) * s);
    r.normalize();
    return r;
}

FourierData sub(const FourierData& a, const FourierData& b) {
    return add(a, scale(b, CycloRat::from_int(b.ring(), -1)));
}

FourierData div_exact(const FourierData& a, i128 d) {
    FourierData r = zero_like(a);
    r.c0 = a.c0.div_exact(d);
    r.pairing = a.pairing.div_exact(d);
    const ScalarRing& R = a.ring();
    auto& rn = r.numerators();
    if (R.exact()) {
        if (d % R.p == 0) throw std::domain_error("div_exact: divisor must be coprime to p");
        for (std::size_t i = 0; i < rn.size(); ++i) {
            if (a.numerators()[i] % d != 0) throw std::domain_error("Fourier coefficient not divisible by " + i128_str(d));
            rn[i] = a.numerators()[i] / d;
        }
        r.set_den_exp(a.den_exp());
    } else {
        i128 inv = mod_inverse(static_cast<std::int64_t>(((d % R.modulus) + R.modulus) % R.modulus), R.modulus);
        for (std::size_t i = 0; i < rn.size(); ++i) rn[i] = (a.numerators()[i] * inv) % R.modulus;
    }
    return r;
}

FourierData truncate(const FourierData& a, int depth) {
    if (depth > a.depth()) throw DepthError("cannot extend Fourier depth by truncation");
    FourierData r(a.field_ptr(), a.ring(), a.level(), depth);
    r.c0 = a.c0;
    r.pairing = a.pairing;
    std::copy(a.numerators().begin(), a.numerators().begin() + static_cast<long>(r.numerators().size()),
              r.numerators().begin());
    r.set_den_exp(a.den_exp());
    r.normalize();
    return r;
}

FourierData with_level(const FourierData& a, const Poly& level) {
    if (!poly::divides(a.field(), a.level(), level)) throw std::invalid_argument("new level must be a multiple");
    FourierData r(a.field_ptr(), a.ring(), level, a.depth());
    r.c0 = a.c0;
    r.pairing = a.pairing;
    r.numerators() = a.numerators();
    r.set_den_exp(a.den_exp());
    return r;
}

FourierData reduce_mod(const FourierData& a, std::int64_t M) {
    if (!a.ring().exact()) throw std::invalid_argument("reduce_mod expects exact data");
    ScalarRing S = ScalarRing::mod_ring(a.ring().p, M);
    FourierData r(a.field_ptr(), S, a.level(), a.depth());
    r.c0 = a.c0.reduce_mod(M);
    r.pairing = a.pairing.reduce_mod(M);
    // p^-V mod M
    std::int64_t pinv = mod_inverse(a.ring().p % M, M), f = 1;
    for (int i = 0; i < a.den_exp(); ++i) f = static_cast<std::int64_t>(static_cast<i128>(f) * pinv % M);
    auto& rn = r.numerators();
    for (std::size_t i = 0; i < rn.size(); ++i) rn[i] = (((a.numerators()[i] % M) * f) % M + M) % M;
    return r;
}

FourierData apply_B(const FourierData& f, const Poly& m) {
    const Field& F = f.field();
    if (m.is_zero() || m.lead() != 1) throw std::invalid_argument("B needs a monic polynomial");
    const int dm = m.deg();
    FourierData r(f.field_ptr(), f.ring(), poly::mul(F, f.level(), m), f.depth() + dm);
    r.set_den_exp(f.den_exp());
    for (std::size_t i = 0; i < f.index().size(); ++i)
        copy_entry(f, i, r, r.index().index(poly::mul(F, f.index().poly(i), m)), 1);
    r.c0 = f.c0.mul_int(qpow(F, dm));
    r.pairing = f.pairing;
    return r;
}

namespace {

FourierData u_part(const FourierData& f, const Poly& p, const Poly& level) {
    const Field& F = f.field();
    const int dp = p.deg();
    if (dp > f.depth()) throw DepthError("insufficient Fourier depth for U");
    FourierData r(f.field_ptr(), f.ring(), level, f.depth() - dp);
    r.set_den_exp(f.den_exp());
    const i128 np = qpow(F, dp);
    for (std::size_t i = 0; i < r.index().size(); ++i)
        copy_entry(f, f.index().index(poly::mul(F, r.index().poly(i), p)), r, i, np);
    r.c0 = f.c0;
    r.pairing = f.pairing.mul_int(np);
    return r;
}

}  // namespace

FourierData apply_U(const FourierData& f, const Poly& p) {
    check_prime(f.field(), p);
    if (!poly::divides(f.field(), p, f.level())) throw std::invalid_argument("U_p needs p | level; use T_p");
    FourierData r = u_part(f, p, f.level());
    r.normalize();
    return r;
}

FourierData apply_T(const FourierData& f, const Poly& p) {
    const Field& F = f.field();
    check_prime(F, p);
    if (poly::divides(F, p, f.level())) throw std::invalid_argument("T_p needs p coprime to the level; use U_p");
    FourierData r = u_part(f, p, f.level());
    for (std::size_t i = 0; i < r.index().size(); ++i) {
        auto [qt, rem] = poly::divmod(F, r.index().poly(i), p);
        if (rem.is_zero()) add_entry(f, f.index().index(qt), r, i);
    }
    const i128 np = qpow(F, p.deg());
    r.c0 = f.c0.mul_int(np + 1);
    r.pairing = f.pairing.mul_int(np + 1);
    r.normalize();
    return r;
}

FourierData apply_K(const FourierData& f, const Poly& p) {
    const Field& F = f.field();
    check_prime(F, p);
    // f|U_p has level lcm(n, p), then B_p multiplies by p
    Poly lvl = poly::divides(F, p, f.level()) ? f.level() : poly::mul(F, f.level(), p);
    FourierData r(f.field_ptr(), f.ring(), poly::mul(F, lvl, p), f.depth());
    r.set_den_exp(f.den_exp());
    for (std::size_t i = 0; i < f.index().size(); ++i)
        if (!poly::divides(F, p, f.index().poly(i))) copy_entry(f, i, r, i, 1);
    r.c0 = CycloRat(f.ring());
    r.pairing = CycloRat(f.ring());
    r.normalize();
    return r;
}

FourierData level_lower(const FourierData& f, const Poly& p) {
    const Field& F = f.field();
    check_prime(F, p);
    if (!poly::divides(F, p, f.level())) throw std::invalid_argument("level lowering needs p | level");
    for (std::size_t i = 0; i < f.index().size(); ++i)
        if (!poly::divides(F, p, f.index().poly(i)) && !f.star_at(i).is_zero())
            throw std::invalid_argument("level lowering needs f* supported on multiples of p");
    if (p.deg() > f.depth()) throw DepthError("insufficient Fourier depth for level lowering");
    FourierData r(f.field_ptr(), f.ring(), poly::div_exact(F, f.level(), p), f.depth() - p.deg());
    r.set_den_exp(f.den_exp());
    for (std::size_t i = 0; i < r.index().size(); ++i)
        copy_entry(f, f.index().index(poly::mul(F, r.index().poly(i), p)), r, i, 1);
    r.c0 = f.c0.div_p_pow(F.e() * p.deg());
    r.pairing = f.pairing;
    r.normalize();
    return r;
}

GL2F w_matrix(const Field& F, const Poly& n, const Poly& m, int variant) {
    if (m.is_zero() || m.lead() != 1 || !poly::divides(F, m, n)) throw std::invalid_argument("W_m needs m | n");
    Poly co = poly::div_exact(F, n, m);
    auto x = poly::xgcd(F, m, co);
    if (!x.g.is_one()) throw std::invalid_argument("W_m needs m || n");
    Poly sm = poly::mul(F, x.s, m);
    if (variant == 0) return GL2F::from_polys(m, poly::neg(F, x.t), n, sm);
    return GL2F::from_polys(sm, x.t, poly::neg(F, n), m);
}

bool is_w_matrix(const Field& F, const GL2F& w, const Poly& n, const Poly& m) {
    if (!(w.a.is_poly() && w.b.is_poly() && w.c.is_poly() && w.d.is_poly())) return false;
    if (!poly::divides(F, m, w.a.num) || !poly::divides(F, m, w.d.num) || !poly::divides(F, n, w.c.num)) return false;
    RatFunc D = gl2::det(F, w);
    return D.is_poly() && !D.num.is_zero() && poly::monic(F, D.num) == m;
}

Evaluator apply_W_pointwise(FieldPtr F, Evaluator f, const GL2F& w) {
    return [F = std::move(F), f = std::move(f), w](const TreeEdge& e) { return f(tree::act(*F, w, e)); };
}

namespace {

nlohmann::ordered_json scalar_json(const CycloRat& x) {
    nlohmann::ordered_json j;
    std::vector<std::string> c;
    for (auto v : x.coords()) c.push_back(i128_str(v));
    j["coords"] = c;
    if (x.ring().exact())
        j["den_exp"] = x.den_exp();
    else
        j["modulus"] = x.ring().modulus;
    return j;
}

}  // namespace

std::string to_json(const FourierData& f) {
    const Field& F = f.field();
    nlohmann::ordered_json j;
    j["level"] = poly::str(F, f.level());
    j["depth"] = f.depth();
    j["c0"] = scalar_json(f.c0);
    j["pairing"] = scalar_json(f.pairing);
    std::map<std::string, std::size_t> order;
    for (std::size_t i = 0; i < f.index().size(); ++i) order[poly::str(F, f.index().poly(i))] = i;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [name, i] : order) arr.push_back({name, scalar_json(f.star_at(i))});
    j["star"] = arr;
    return j.dump();
}

}  // namespace cochain

}  // namespace tc

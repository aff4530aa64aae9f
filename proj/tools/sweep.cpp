#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace tc::cli {

namespace {

constexpr int kMaxQ = 9, kMaxS = 3, kMaxDeg = 3, kMaxEllPower = 128;
constexpr long long kMaxLevels = 20000;

void combos(int n, int s, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == s) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        combos(n, s, i + 1, cur, out);
        cur.pop_back();
    }
}

long long binom(long long n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_rails(const SweepRanges& rg) {
    for (int q : rg.qs)
        if (q < 2 || q > kMaxQ) throw UsageError("guard rail q <= 9 violated by q=" + std::to_string(q));
    for (int s : rg.ss)
        if (s < 1 || s > kMaxS) throw UsageError("guard rail s <= 3 violated by s=" + std::to_string(s));
    for (int d : rg.degs)
        if (d < 1 || d > kMaxDeg) throw UsageError("guard rail deg p_i <= 3 violated by deg=" + std::to_string(d));
    if (rg.ell) {
        if (rg.ell < 2 || !is_prime_int(rg.ell)) throw UsageError("--ell must be prime");
        if (rg.r < 1) throw UsageError("--r must be at least 1");
        long long v = 1;
        for (int i = 0; i < rg.r; ++i) {
            v *= rg.ell;
            if (v > kMaxEllPower) throw UsageError("guard rail ell^r <= 128 violated");
        }
    }
}

struct Row {
    int q;
    std::string n;
    int s;
    std::string elementary, eps;
    i128 N, nu;
    std::string order;
    bool sandwich_ok;
    std::string rho;
    bool exponent_ok;
    // eisenstein columns, filled when ell is given
    std::string eis_order;
    bool eis_ok = false, eis_within = false;
};

}  // namespace

std::pair<std::string, bool> run_sweep(const SweepRanges& rg, const std::string& format) {
    check_rails(rg);
    std::vector<std::pair<FieldPtr, std::vector<Level>>> plan;
    long long total = 0;
    for (int q : rg.qs) {
        std::vector<int> mod = rg.modulus;
        if (is_prime_int(q)) mod.clear();
        else if (mod.empty()) mod = default_modulus(q);
        auto F = make_field(q, mod);
        if (rg.ell == F->p()) throw UsageError("--ell must differ from the characteristic of q=" + std::to_string(q));
        std::vector<Level> levels;
        if (rg.level) {
            levels.push_back(parse_level(*F, *rg.level));
        } else {
            std::vector<Poly> primes;
            for (int d : rg.degs)
                for (const auto& m : poly::monics_of_degree(*F, d))
                    if (poly::is_irreducible(*F, m)) primes.push_back(m);
            std::sort(primes.begin(), primes.end(), [](const Poly& a, const Poly& b) {
                return a.deg() != b.deg() ? a.deg() < b.deg() : a.c < b.c;
            });
            std::vector<int> ss = rg.ss;
            std::sort(ss.begin(), ss.end());
            ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
            for (int s : ss) {
                total += binom(static_cast<long long>(primes.size()), s);
                if (total > kMaxLevels)
                    throw UsageError("guard rail of " + std::to_string(kMaxLevels) + " levels per sweep violated");
                std::vector<std::vector<int>> idx;
                std::vector<int> cur;
                combos(static_cast<int>(primes.size()), s, 0, cur, idx);
                for (const auto& ix : idx) {
                    std::vector<Poly> ps;
                    for (int i : ix) ps.push_back(primes[i]);
                    levels.push_back(make_level(*F, ps));
                }
            }
        }
        plan.push_back({F, std::move(levels)});
    }

    std::vector<Row> rows;
    bool all_ok = true;
    for (const auto& [F, levels] : plan) {
        for (const auto& L : levels) {
            auto g = cusp_group(*F, L);
            auto x = exponent_check(*F, L);
            std::string elem;
            for (const auto& d : g.quotient.elementary) elem += (elem.empty() ? "" : " ") + big_str(d);
            for (const auto& row : g.rows) {
                Row r{F->q(), poly::str(*F, L.n), L.s(), elem, eps_str(row.eps), row.N, row.nu,
                      row.order ? big_str(*row.order) : "inf", row.sandwich_ok, big_str(x.rho), x.ok(), "", false, false};
                bool ok = row.sandwich_ok && row.expansion_ok && row.w_ok && x.ok();
                if (rg.ell) {
                    auto E = build_E_eps(F, ScalarRing::exact_ring(F->p()), L, row.eps, order_depth(L));
                    auto c = eisenstein_order_from(E, L, row.eps, rg.ell, rg.r, false);
                    r.eis_order = i128_str(c.order);
                    r.eis_ok = c.ok();
                    r.eis_within = c.within_hypotheses;
                    if (c.within_hypotheses) ok = ok && c.ok();
                }
                all_ok = all_ok && ok;
                rows.push_back(std::move(r));
            }
        }
    }

    std::vector<std::string> cols{"q",  "n",      "s",           "elementary_divisors", "eps",         "N",
                                  "nu", "D_eps_order", "sandwich_ok", "rho",                 "exponent_ok"};
    if (rg.ell) cols.insert(cols.end(), {"ell", "r", "eis_order", "eis_certificate_ok", "eis_within_hypotheses"});
    auto tf = [](bool b) { return std::string(b ? "true" : "false"); };
    std::ostringstream out;
    if (format == "json") {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["q"] = r.q;
            j["n"] = r.n;
            j["s"] = r.s;
            j["elementary_divisors"] = r.elementary;
            j["eps"] = r.eps;
            j["N"] = i128_str(r.N);
            j["nu"] = i128_str(r.nu);
            j["D_eps_order"] = r.order;
            j["sandwich_ok"] = r.sandwich_ok;
            j["rho"] = r.rho;
            j["exponent_ok"] = r.exponent_ok;
            if (rg.ell) {
                j["ell"] = rg.ell;
                j["r"] = rg.r;
                j["eis_order"] = r.eis_order;
                j["eis_certificate_ok"] = r.eis_ok;
                j["eis_within_hypotheses"] = r.eis_within;
            }
            arr.push_back(std::move(j));
        }
        out << arr.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        out << "\n";
        for (const auto& r : rows) {
            out << r.q << "," << csv_field(r.n) << "," << r.s << "," << csv_field(r.elementary) << "," << r.eps << ","
                << i128_str(r.N) << "," << i128_str(r.nu) << "," << r.order << "," << tf(r.sandwich_ok) << "," << r.rho
                << "," << tf(r.exponent_ok);
            if (rg.ell)
                out << "," << rg.ell << "," << rg.r << "," << r.eis_order << "," << tf(r.eis_ok) << ","
                    << tf(r.eis_within);
            out << "\n";
        }
    }
    return {out.str(), all_ok};
}

}  // namespace tc::cli

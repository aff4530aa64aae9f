#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace tc::cli {

namespace {

using ojson = nlohmann::ordered_json;

CycloRat Z(const ScalarRing& R, i128 n) { return CycloRat::from_int(R, n); }

i128 norm(const Field& F, const Poly& p) { return ipow(F.q(), p.deg()); }

i128 gcd_abs(i128 a, i128 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string pstr(const Field& F, const Poly& p) { return poly::str(F, p); }

std::vector<Poly> primes_up_to(const Field& F, int max_deg) {
    std::vector<Poly> out;
    for (int d = 1; d <= max_deg; ++d)
        for (const auto& m : poly::monics_of_degree(F, d))
            if (poly::is_irreducible(F, m)) out.push_back(m);
    return out;
}

struct Sampled {
    int done = 0, skipped = 0, bad = 0;
    std::string summary(int want) const {
        std::ostringstream s;
        s << done << "/" << want << " edges, " << bad << " mismatches, " << skipped << " depth skips";
        return s.str();
    }
    bool ok(int want) const { return done == want && bad == 0; }
};

// k uniform in [-D, D + 2], orientation a fair coin, u with iid digits.
// Draws that need more depth than stored are redrawn.
template <class Pred>
Sampled sample(const Field& F, std::mt19937_64& rng, int want, int D, Pred pred) {
    Sampled s;
    while (s.done < want && s.skipped < 50 * want) {
        bool positive = rng() % 2 == 0;
        auto e = tree::random_edge(F, rng, -D, D + 2, positive);
        try {
            if (!pred(e)) ++s.bad;
            ++s.done;
        } catch (const DepthError&) {
            ++s.skipped;
        }
    }
    return s;
}

struct Named {
    std::string tag;
    FourierData f;
    std::optional<EpsVector> eps;
};

const Level& need_level(const RunConfig& cfg, const std::string& suite) {
    if (!cfg.level) throw UsageError("suite '" + suite + "' needs --level");
    return *cfg.level;
}

std::vector<EpsVector> eps_list(const RunConfig& cfg, const Level& L) {
    if (cfg.eps) {
        if (static_cast<int>(cfg.eps->signs.size()) != L.s())
            throw UsageError("--eps has " + std::to_string(cfg.eps->signs.size()) + " signs, level has " +
                             std::to_string(L.s()) + " primes");
        return {*cfg.eps};
    }
    return all_eps(L.s());
}

// Etilde, plus E^eps for the selected eps when a level is given.
std::vector<Named> cochains(const RunConfig& cfg, int depth) {
    auto R = ScalarRing::exact_ring(cfg.F->p());
    std::vector<Named> out;
    out.push_back({"Etilde", etilde_fourier(cfg.F, R, depth), std::nullopt});
    if (cfg.level)
        for (const auto& e : eps_list(cfg, *cfg.level))
            out.push_back({"E^" + eps_str(e), build_E_eps(cfg.F, R, *cfg.level, e, depth), e});
    return out;
}

bool is_hodge(const Level& L, const EpsVector& e) {
    for (int i = 0; i < L.s(); ++i)
        if (e.signs[i] != (L.primes[i].deg() % 2 ? -1 : 1)) return false;
    return true;
}

i128 expect_N(const Field& F, const Level& L, const EpsVector& e) {
    i128 N = 1;
    for (int i = 0; i < L.s(); ++i) N *= 1 + e.signs[i] * norm(F, L.primes[i]);
    return N;
}

i128 expect_nu(const Field& F, const Level& L, const EpsVector& e) { return is_hodge(L, e) ? 1 : F.q() + 1; }

bool divides_q_q1(int q, int ell) { return (static_cast<long long>(q) * (q - 1)) % ell == 0; }

void need_ell(const RunConfig& cfg, const std::string& suite) {
    if (cfg.ell == 0) throw UsageError("suite '" + suite + "' needs --ell");
    if (cfg.ell == cfg.F->p()) throw UsageError("--ell must differ from the characteristic");
}

void need_depth(const RunConfig& cfg, int want, const std::string& why) {
    if (cfg.depth < want)
        throw ResourceError("--depth " + std::to_string(cfg.depth) + " is below the " + std::to_string(want) +
                            " needed for " + why);
}

Report pharm(const RunConfig& cfg) {
    Report rep{"pharm", {}};
    std::mt19937_64 rng(cfg.seed);
    for (const auto& c : cochains(cfg, cfg.depth)) {
        const auto& f = c.f;
        auto s = sample(*cfg.F, rng, cfg.samples, cfg.depth, [&](const TreeEdge& e) {
            CycloRat sum(f.ring());
            for (const auto& x : tree::incoming_neighbors(*cfg.F, e)) sum += cochain::eval(f, x);
            return sum == cochain::eval(f, e);
        });
        rep.add(c.tag + " flow", "pseudo-harmonicity of Eisenstein cochains", s.ok(cfg.samples), s.summary(cfg.samples));
    }
    return rep;
}

Report pairing(const RunConfig& cfg) {
    Report rep{"pairing", {}};
    std::mt19937_64 rng(cfg.seed);
    const int q = cfg.F->q();
    for (const auto& c : cochains(cfg, cfg.depth)) {
        i128 want = q + 1;
        if (c.eps) {
            i128 prod = 1;
            for (int sgn : c.eps->signs) prod *= 1 + sgn;
            want = (q + 1) * prod / expect_nu(*cfg.F, *cfg.level, *c.eps);
        }
        const auto& f = c.f;
        auto Rw = Z(f.ring(), want);
        auto s = sample(*cfg.F, rng, cfg.samples, cfg.depth,
                        [&](const TreeEdge& e) { return cochain::eval(f, e) + cochain::eval(f, tree::bar(e)) == Rw; });
        std::string d = "constant " + i128_str(want) + ", " + s.summary(cfg.samples);
        bool ok = s.ok(cfg.samples) && f.pairing == Rw;
        if (c.eps) ok = ok && ((want == 0) == !c.eps->is_one());
        rep.add(c.tag + " e + bar e", "pairing constant of Eisenstein cochains", ok, d);
    }
    return rep;
}

Report hecke(const RunConfig& cfg) {
    Report rep{"hecke-eigen", {}};
    need_depth(cfg, 1, "Hecke operators");
    const int D = cfg.depth;
    auto primes = primes_up_to(*cfg.F, std::min(3, D));
    for (const auto& c : cochains(cfg, D)) {
        auto R = c.f.ring();
        for (const auto& p : primes) {
            if (poly::divides(*cfg.F, p, c.f.level())) continue;
            auto lhs = cochain::apply_T(c.f, p);
            auto rhs = cochain::scale(cochain::truncate(c.f, D - p.deg()), Z(R, norm(*cfg.F, p) + 1));
            rep.add(c.tag + " T_" + pstr(*cfg.F, p), "Hecke eigenvalue |p| + 1", lhs == rhs,
                    "eigenvalue " + i128_str(norm(*cfg.F, p) + 1) + ", compared to depth " +
                        std::to_string(D - p.deg()));
        }
    }
    return rep;
}

Report atkin_lehner(const RunConfig& cfg) {
    Report rep{"atkin-lehner", {}};
    const auto& L = need_level(cfg, "atkin-lehner");
    auto R = ScalarRing::exact_ring(cfg.F->p());
    std::mt19937_64 rng(cfg.seed);
    for (const auto& e : eps_list(cfg, L)) {
        auto c = e_eps_combo(*cfg.F, L, e);
        auto f = build_E_eps(cfg.F, R, L, e, cfg.depth);
        auto ev = cochain::evaluator(f);
        for (int i = 0; i < L.s(); ++i) {
            const auto& p = L.primes[i];
            std::string name = "E^" + eps_str(e) + " W_" + pstr(*cfg.F, p);
            const std::string tag = "Atkin-Lehner eigenvalue eps_i";
            rep.add(name + " symbolic", tag, combo_equal(combo_apply_W(*cfg.F, c, 1u << i), combo_scale(c, e.signs[i])),
                    "expected sign " + std::to_string(e.signs[i]));
            auto m0 = cochain::w_matrix(*cfg.F, L.n, p, 0), m1 = cochain::w_matrix(*cfg.F, L.n, p, 1);
            bool mats = !(m0 == m1) && cochain::is_w_matrix(*cfg.F, m0, L.n, p) && cochain::is_w_matrix(*cfg.F, m1, L.n, p);
            auto w0 = cochain::apply_W_pointwise(cfg.F, ev, m0), w1 = cochain::apply_W_pointwise(cfg.F, ev, m1);
            auto s = sample(*cfg.F, rng, cfg.samples, cfg.depth, [&](const TreeEdge& x) {
                auto a = w0(x);
                return a == w1(x) && a == ev(x).mul_int(e.signs[i]);
            });
            rep.add(name + " matrices", tag, mats && s.ok(cfg.samples),
                    gl2::str(*cfg.F, m0) + " and " + gl2::str(*cfg.F, m1) + ", " + s.summary(cfg.samples));
        }
    }
    return rep;
}

std::vector<Poly> operator_primes(const RunConfig& cfg, int max_deg) {
    if (cfg.level) return cfg.level->primes;
    return primes_up_to(*cfg.F, max_deg);
}

Report level_lower(const RunConfig& cfg) {
    Report rep{"level-lower", {}};
    const int D = cfg.depth;
    auto primes = operator_primes(cfg, std::min(2, D - 1));
    int max_deg = 0;
    for (const auto& p : primes) max_deg = std::max(max_deg, p.deg());
    need_depth(cfg, max_deg + 1, "level lowering");
    auto R = ScalarRing::exact_ring(cfg.F->p());
    auto E = etilde_fourier(cfg.F, R, D);
    std::mt19937_64 rng(cfg.seed);
    for (const auto& p : primes) {
        auto base = cochain::truncate(E, D - p.deg());
        auto f = cochain::apply_B(base, p);
        auto g = cochain::level_lower(f, p);
        bool same = g == base && cochain::apply_B(g, p) == f;
        auto fw = cochain::apply_W_pointwise(cfg.F, cochain::evaluator(f), cochain::w_matrix(*cfg.F, p, p, 0));
        auto gev = cochain::evaluator(g);
        auto s = sample(*cfg.F, rng, cfg.samples, D - p.deg(), [&](const TreeEdge& e) { return fw(e) == gev(e); });
        rep.add("Etilde|B_" + pstr(*cfg.F, p), "level lowering through W_p", same && s.ok(cfg.samples),
                std::string(same ? "g|B_p = f and g = Etilde" : "reconstruction differs") + ", f|W_p = g on " +
                    s.summary(cfg.samples));
    }
    return rep;
}

Report annihilator(const RunConfig& cfg) {
    Report rep{"annihilator", {}};
    const int D = cfg.depth;
    auto primes = operator_primes(cfg, std::min(2, D));
    auto E = etilde_fourier(cfg.F, ScalarRing::exact_ring(cfg.F->p()), D);
    for (const auto& p : primes) {
        auto K = cochain::apply_K(E, p);
        int killed = 0, kept = 0, bad = 0;
        for (std::size_t i = 0; i < K.index().size(); ++i) {
            bool div = poly::divides(*cfg.F, p, K.index().poly(i));
            if (K.star_at(i).is_zero() != div || (!div && K.star_at(i) != E.star_at(i))) ++bad;
            (div ? killed : kept) += 1;
        }
        rep.add("Etilde|K_" + pstr(*cfg.F, p), "annihilator K_p", bad == 0,
                std::to_string(killed) + " coefficients killed, " + std::to_string(kept) + " kept, " +
                    std::to_string(bad) + " wrong");
    }
    return rep;
}

Report trace(const RunConfig& cfg) {
    Report rep{"trace", {}};
    const auto& L = need_level(cfg, "trace");
    const Field& F = *cfg.F;
    const int i = L.s() - 1;
    const Poly& ps = L.primes[i];
    need_depth(cfg, ps.deg(), "U_p at the last prime");
    const std::string tag = "trace and U_p at the last prime";
    auto e = eps_H_s(L);
    auto c = e_eps_combo(F, L, e);
    auto R = ScalarRing::exact_ring(F.p());
    auto E = build_E_eps(cfg.F, R, L, e, cfg.depth);
    auto U = cochain::apply_U(E, ps);
    const std::string name = "E^" + eps_str(e);
    if (ps.deg() % 2 == 0) {
        rep.add(name + " U symbolic", tag, combo_equal(combo_apply_U(F, c, i), c), "E|U_p = E");
        rep.add(name + " U Fourier", tag, U == cochain::truncate(E, cfg.depth - ps.deg()),
                "compared to depth " + std::to_string(cfg.depth - ps.deg()));
        rep.add(name + " trace", tag, trace_down(F, c, i).coeffs.empty(), "trace to level n/p vanishes");
        return rep;
    }
    if (cfg.ell == 0) {
        rep.info(name + " torsion", tag, "odd degree; pass --ell and --r for the torsion variant");
        return rep;
    }
    need_ell(cfg, "trace");
    // R[n] for n the ell-part of gcd(q + 1, deg p_s), capped at ell^r
    i128 M = ipow(cfg.ell, cfg.r), g = gcd_abs(F.q() + 1, ps.deg()), n = 1;
    while (g % cfg.ell == 0 && n < M) {
        g /= cfg.ell;
        n *= cfg.ell;
    }
    if (n == 1) {
        rep.info(name + " torsion", tag, "R[n] is trivial for ell = " + std::to_string(cfg.ell));
        return rep;
    }
    auto X = cochain::reduce_mod(cochain::add(U, cochain::truncate(E, cfg.depth - ps.deg())), static_cast<std::int64_t>(M));
    bool ok = true;
    for (i128 a = M / n; a < M; a += M / n)
        ok = ok && cochain::scale(X, Z(X.ring(), a)) == cochain::zero_like(X);
    rep.add(name + " torsion Fourier", tag, ok,
            "a(E|U + E) = 0 in Z/" + i128_str(M) + " for a in R[" + i128_str(n) + "]" +
                (X == cochain::zero_like(X) ? ", E|U + E itself vanishes" : ""));
    rep.add(name + " torsion symbolic", tag, combo_vanishes_mod(combo_add(combo_apply_U(F, c, i), c), n),
            "E|U + E vanishes mod " + i128_str(n));
    return rep;
}

Report theorem_orders(const RunConfig& cfg) {
    Report rep{"theorem-orders", {}};
    const auto& L = need_level(cfg, "theorem-orders");
    need_ell(cfg, "theorem-orders");
    const Field& F = *cfg.F;
    const bool within = !divides_q_q1(F.q(), cfg.ell);
    auto R = ScalarRing::exact_ring(F.p());
    const std::string tag = "order of the Eisenstein class mod ell^r";
    for (const auto& e : eps_list(cfg, L)) {
        auto E = build_E_eps(cfg.F, R, L, e, std::max(cfg.depth, order_depth(L)));
        auto c = eisenstein_order_from(E, L, e, cfg.ell, cfg.r, false);
        i128 N = expect_N(F, L, e), nu = expect_nu(F, L, e);
        i128 want = e.is_one() ? 1 : gcd_abs(ipow(cfg.ell, cfg.r), N / nu);
        std::ostringstream d;
        d << "order=" << i128_str(c.order) << " expected=" << i128_str(want) << " N=" << i128_str(c.N)
          << " nu=" << i128_str(c.nu) << " cuspidal=" << c.cuspidal << " harmonic=" << c.harmonic
          << " nonzero=" << c.nonzero << " tight=" << c.tight;
        std::string name = "E^" + eps_str(e) + (is_hodge(L, e) ? " (eps_H)" : "");
        if (!within)
            rep.info(name, tag, d.str() + "; ell divides q(q-1), outside the hypotheses");
        else
            rep.add(name, tag, c.order == want && c.N == N && c.nu == nu && c.ok(), d.str());
    }
    return rep;
}

std::string join_big(const std::vector<BigInt>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + big_str(x);
    return s.empty() ? "none" : s;
}

Report cusp(const RunConfig& cfg) {
    Report rep{"cusp-group", {}};
    const auto& L = need_level(cfg, "cusp-group");
    auto g = cusp_group(*cfg.F, L);
    rep.info("quotient", "cuspidal divisor class group",
             "elementary divisors " + join_big(g.quotient.elementary) + ", free rank " +
                 std::to_string(g.quotient.free_rank));
    for (const auto& row : g.rows) {
        if (cfg.eps && row.eps != *cfg.eps) continue;
        std::string d = "order " + (row.order ? big_str(*row.order) : std::string("infinite")) + ", N=" +
                        i128_str(row.N) + " nu=" + i128_str(row.nu) + ", expansion " + (row.expansion_ok ? "ok" : "bad") +
                        ", W " + (row.w_ok ? "ok" : "bad") + ", sandwich " + (row.sandwich_ok ? "ok" : "bad");
        rep.add("D^" + eps_str(row.eps), "order of D^eps between N/nu and N", row.expansion_ok && row.w_ok && row.sandwich_ok,
                d);
    }
    return rep;
}

Report exponent(const RunConfig& cfg) {
    Report rep{"exponent-rho", {}};
    const auto& L = need_level(cfg, "exponent-rho");
    auto x = exponent_check(*cfg.F, L);
    const std::string tag = "exponent of the cuspidal group divides rho";
    std::string group = x.elementary.empty() ? "trivial group" : "elementary divisors " + join_big(x.elementary);
    rep.add("exponent divides rho", tag, x.divides, "rho=" + big_str(x.rho) + ", " + group);
    rep.add("p-part trivial", tag, x.p_part_trivial, "p=" + std::to_string(cfg.F->p()));
    rep.add("pullbacks are relations", tag, x.pullbacks_ok, "level n/p relations pulled back along both maps");
    rep.add("pullback identities", tag, x.identities_ok, "combinations and div(Delta/Delta_p) match the closed formula");
    return rep;
}

}  // namespace

bool Report::failed() const {
    return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == "fail"; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"pharm", "pairing",     "hecke-eigen",    "atkin-lehner", "level-lower",
                                                "annihilator", "trace", "theorem-orders", "cusp-group",   "exponent-rho"};
    return names;
}

Report run_suite(const RunConfig& cfg, const std::string& suite) {
    if (suite == "pharm") return pharm(cfg);
    if (suite == "pairing") return pairing(cfg);
    if (suite == "hecke-eigen") return hecke(cfg);
    if (suite == "atkin-lehner") return atkin_lehner(cfg);
    if (suite == "level-lower") return level_lower(cfg);
    if (suite == "annihilator") return annihilator(cfg);
    if (suite == "trace") return trace(cfg);
    if (suite == "theorem-orders") return theorem_orders(cfg);
    if (suite == "cusp-group") return cusp(cfg);
    if (suite == "exponent-rho") return exponent(cfg);
    std::string known;
    for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown suite '" + suite + "' (known: " + known + ")");
}

std::string config_json(const RunConfig& cfg) {
    ojson c;
    c["q"] = cfg.F->q();
    c["p"] = cfg.F->p();
    c["e"] = cfg.F->e();
    c["modulus"] = cfg.modulus;
    c["level"] = cfg.level_text;
    c["eps"] = cfg.eps ? eps_str(*cfg.eps) : "all";
    c["ell"] = cfg.ell;
    c["r"] = cfg.r;
    c["depth"] = cfg.depth;
    c["samples"] = cfg.samples;
    c["seed"] = cfg.seed;
    return c.dump();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return o + "\"";
}

std::string report_text(const RunConfig& cfg, const Report& rep) {
    int pass = 0, fail = 0, info = 0;
    for (const auto& c : rep.checks) (c.status == "pass" ? pass : c.status == "fail" ? fail : info) += 1;
    if (cfg.format == "csv") {
        std::string out = "suite,name,paper_tag,status,details\n";
        for (const auto& c : rep.checks)
            out += csv_field(rep.suite) + "," + csv_field(c.name) + "," + csv_field(c.paper_tag) + "," + c.status + "," +
                   csv_field(c.details) + "\n";
        return out;
    }
    ojson j;
    j["config"] = ojson::parse(config_json(cfg));
    j["suite"] = rep.suite;
    j["checks"] = ojson::array();
    for (const auto& c : rep.checks)
        j["checks"].push_back({{"name", c.name}, {"paper_tag", c.paper_tag}, {"status", c.status}, {"details", c.details}});
    j["summary"] = {{"total", rep.checks.size()}, {"pass", pass}, {"fail", fail}, {"info", info}};
    return j.dump(2) + "\n";
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ResourceError("cannot open '" + cfg.out + "' for writing");
    f << text;
}

}  // namespace tc::cli

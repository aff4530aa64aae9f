// treecochain: evaluate, verify and sweep Eisenstein cochains on the tree.
// Exit codes: 0 all pass, 1 verification failure, 2 usage error, 3 depth or
// resource error.
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "cli.hpp"

using namespace tc;
using namespace tc::cli;

namespace tc::cli {

std::vector<int> default_modulus(int q) {
    switch (q) {
        case 4: return {1, 1, 1};
        case 8: return {1, 1, 0, 1};
        case 9: return {1, 0, 1};
        default: return {};
    }
}

FieldPtr make_field(int q, const std::vector<int>& modulus) {
    if (q < 2) throw UsageError("q must be a prime power");
    if (!is_prime_int(q) && modulus.empty())
        throw UsageError("q=" + std::to_string(q) + " needs --ext-modulus");
    try {
        return Field::make(q, is_prime_int(q) ? std::vector<int>{} : modulus);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (s.back() == sep) out.push_back("");
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& t : split(s, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(t, &used);
        } catch (const std::exception&) {
            throw UsageError("expected an integer list, got '" + s + "'");
        }
        if (used != t.size()) throw UsageError("expected an integer list, got '" + s + "'");
        out.push_back(v);
    }
    return out;
}

Level parse_level(const Field& F, const std::string& text) {
    std::vector<Poly> ps;
    try {
        for (const auto& t : split(text, ',')) ps.push_back(poly::parse(F, t));
        return make_level(F, ps);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad --level: ") + e.what());
    }
}

}  // namespace tc::cli

namespace {

struct RawFlags {
    int q = 3;
    std::string ext_modulus, level, eps;
    int ell = 0, r = 1, depth = 6, samples = 200;
    std::uint64_t seed = 1;
    std::string out = "-", format;
};

void add_common(CLI::App* sub, RawFlags& f) {
    sub->add_option("--q", f.q, "field size q");
    sub->add_option("--ext-modulus", f.ext_modulus, "modulus of F_q over F_p, coefficients low to high, comma separated");
    sub->add_option("--level", f.level, "comma separated monic irreducible polynomials");
    sub->add_option("--eps", f.eps, "sign vector such as +- (default: all)");
    sub->add_option("--ell", f.ell, "prime ell");
    sub->add_option("--r", f.r, "exponent r");
    sub->add_option("--depth", f.depth, "Fourier depth D");
    sub->add_option("--samples", f.samples, "edges per sampled check");
    sub->add_option("--seed", f.seed, "mt19937_64 seed");
    sub->add_option("--out", f.out, "output path, - for stdout");
    sub->add_option("--format", f.format, "text, json or csv");
}

RunConfig build_config(const RawFlags& f) {
    RunConfig c;
    c.modulus = f.ext_modulus.empty() ? default_modulus(f.q) : parse_int_list(f.ext_modulus);
    if (is_prime_int(f.q)) c.modulus.clear();
    c.F = make_field(f.q, c.modulus);
    if (!f.level.empty()) {
        c.level = parse_level(*c.F, f.level);
        for (const auto& p : c.level->primes) c.level_text.push_back(poly::str(*c.F, p));
    }
    if (!f.eps.empty()) {
        try {
            c.eps = eps_parse(f.eps);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("bad --eps: ") + e.what());
        }
    }
    if (f.ell != 0 && (f.ell < 2 || !is_prime_int(f.ell))) throw UsageError("--ell must be prime");
    if (f.r < 1) throw UsageError("--r must be at least 1");
    if (f.depth < 0) throw UsageError("--depth must be non-negative");
    if (f.samples < 0) throw UsageError("--samples must be non-negative");
    // dense Fourier tables hold about q^D entries
    long double cells = 1;
    for (int i = 0; i < f.depth; ++i) cells *= f.q;
    if (cells * (c.F->p() - 1) > 5e7L) throw ResourceError("--depth too large for q=" + std::to_string(f.q));
    c.ell = f.ell;
    c.r = f.r;
    c.depth = f.depth;
    c.samples = f.samples;
    c.seed = f.seed;
    c.out = f.out;
    c.format = f.format;
    return c;
}

// Spacing inside the edge text is free.
TreeEdge parse_edge(const Field& F, const std::string& raw) {
    try {
        return tree::parse(F, raw);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad --edge: ") + e.what());
    }
}

int cmd_eval(const RawFlags& f, const std::string& edge_text, const std::string& target) {
    auto cfg = build_config(f);
    if (cfg.format.empty()) cfg.format = "text";
    if (cfg.format != "text" && cfg.format != "json") throw UsageError("eval supports --format text or json");
    auto e = parse_edge(*cfg.F, edge_text);
    const Field& F = *cfg.F;
    auto R = ScalarRing::exact_ring(F.p());
    i128 sum = 0, nu = 1;
    CycloRat fourier(R);
    if (target == "etilde") {
        sum = etilde_closed(F, e);
        fourier = cochain::eval(etilde_fourier(cfg.F, R, cfg.depth), e);
    } else {
        if (!cfg.level || !cfg.eps) throw UsageError("eeps needs --level and --eps");
        const auto& L = *cfg.level;
        if (static_cast<int>(cfg.eps->signs.size()) != L.s()) throw UsageError("--eps length differs from the level");
        // (1/nu) sum_d eps_d Etilde(diag(d, 1) e)
        nu = nu_of(F, L, *cfg.eps);
        for (unsigned m = 0; m <= L.full_mask(); ++m)
            sum += cfg.eps->eps_d(m) * etilde_closed(F, tree::act(F, gl2::dilation(divisor(F, L, m)), e));
        auto E = build_E_eps(cfg.F, R, L, *cfg.eps, cfg.depth);
        fourier = cochain::eval(E, e);
    }
    CycloRat diff_num = fourier.mul_int(nu) - CycloRat::from_int(R, sum);
    std::string closed = i128_str(sum), diff = diff_num.str();
    if (nu != 1) {
        if (sum % nu == 0)
            closed = i128_str(sum / nu);
        else
            closed += "/" + i128_str(nu);
        if (!diff_num.is_zero()) diff = "(" + diff + ")/" + i128_str(nu);
    }
    std::string text;
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["config"] = nlohmann::ordered_json::parse(config_json(cfg));
        j["target"] = target;
        j["edge"] = tree::str(F, e);
        j["closed"] = closed;
        j["fourier"] = fourier.str();
        j["diff"] = diff;
        text = j.dump(2) + "\n";
    } else {
        text = "edge=" + tree::str(F, e) + "\nclosed=" + closed + "\nfourier=" + fourier.str() + "\ndiff=" + diff + "\n";
    }
    emit(cfg, text);
    return diff_num.is_zero() ? 0 : 1;
}

int cmd_verify(const RawFlags& f, const std::string& suite) {
    auto cfg = build_config(f);
    if (cfg.format.empty()) cfg.format = "json";
    if (cfg.format != "json" && cfg.format != "csv") throw UsageError("verify supports --format json or csv");
    auto rep = run_suite(cfg, suite);
    emit(cfg, report_text(cfg, rep));
    return rep.failed() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic cochains on the Bruhat-Tits tree of F_q(T)"};
    app.require_subcommand(1);

    RawFlags ev_flags, ve_flags;
    std::string edge_text, target, suite;
    auto* ev = app.add_subcommand("eval", "evaluate a cochain at one edge by the closed form and by Fourier expansion");
    add_common(ev, ev_flags);
    ev->add_option("--edge", edge_text, "edge such as '(2; 0; +)'")->required();
    ev->add_option("target", target, "etilde or eeps")->required()->check(CLI::IsMember({"etilde", "eeps"}));

    auto* ve = app.add_subcommand("verify", "run a verification suite");
    add_common(ve, ve_flags);
    ve->add_option("suite", suite, "suite name")->required();

    std::string sw_q = "2,3", sw_s = "2", sw_deg = "1", sw_level, sw_mod, sw_out = "-", sw_format = "csv";
    int sw_ell = 0, sw_r = 1;
    auto* sw = app.add_subcommand("sweep", "cusp-group table over a range of levels");
    sw->add_option("--q", sw_q, "comma separated field sizes");
    sw->add_option("--s", sw_s, "comma separated prime counts");
    sw->add_option("--deg", sw_deg, "comma separated prime degrees");
    sw->add_option("--level", sw_level, "a single level instead of the ranges");
    sw->add_option("--ext-modulus", sw_mod, "modulus for non-prime q");
    sw->add_option("--ell", sw_ell, "add Eisenstein order columns for this prime");
    sw->add_option("--r", sw_r, "exponent r for the order columns");
    sw->add_option("--out", sw_out, "output path, - for stdout");
    sw->add_option("--format", sw_format, "csv or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ev->parsed()) return cmd_eval(ev_flags, edge_text, target);
        if (ve->parsed()) return cmd_verify(ve_flags, suite);
        SweepRanges rg;
        rg.qs = parse_int_list(sw_q);
        rg.ss = parse_int_list(sw_s);
        rg.degs = parse_int_list(sw_deg);
        if (!sw_level.empty()) rg.level = sw_level;
        rg.modulus = sw_mod.empty() ? std::vector<int>{} : parse_int_list(sw_mod);
        rg.ell = sw_ell;
        rg.r = sw_r;
        if (sw_format != "csv" && sw_format != "json") throw UsageError("sweep supports --format csv or json");
        auto [text, ok] = run_sweep(rg, sw_format);
        RunConfig out_cfg;
        out_cfg.out = sw_out;
        emit(out_cfg, text);
        return ok ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DepthError& e) {
        std::cerr << "depth error: " << e.what() << "\n";
        return 3;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

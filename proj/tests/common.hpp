#pragma once

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "treecochain/eisenstein.hpp"

namespace tc {
inline void PrintTo(const CycloRat& x, std::ostream* os) { *os << x.str(); }
}  // namespace tc

namespace tc::testing {

inline FieldPtr field(int q) {
    if (q == 4) return Field::extension(2, {1, 1, 1});
    if (q == 8) return Field::extension(2, {1, 1, 0, 1});
    if (q == 9) return Field::extension(3, {1, 0, 1});
    return Field::prime(q);
}

inline Poly P(const Field& F, const std::string& s) { return poly::parse(F, s); }

inline Level lvl(const Field& F, std::initializer_list<const char*> ps) {
    std::vector<Poly> v;
    for (auto s : ps) v.push_back(poly::parse(F, s));
    return make_level(F, v);
}

inline TreeEdge edge(const Field& F, const std::string& s) { return tree::parse(F, s); }

inline cochain::Evaluator closed_etilde(const Field& F, const ScalarRing& R) {
    return [&F, R](const TreeEdge& e) { return CycloRat::from_int(R, etilde_closed(F, e)); };
}

inline std::vector<Poly> primes_up_to(const Field& F, int max_deg) {
    std::vector<Poly> out;
    for (int d = 1; d <= max_deg; ++d)
        for (const auto& m : poly::monics_of_degree(F, d))
            if (poly::is_irreducible(F, m)) out.push_back(m);
    return out;
}

/// Random Fourier data with rational star values; not meant to be
/// Gamma_0-invariant, only for Fourier-level identities.
inline FourierData random_fourier(FieldPtr F, const Poly& level, int depth, std::mt19937_64& rng) {
    ScalarRing R = ScalarRing::exact_ring(F->p());
    FourierData f(F, R, level, depth);
    std::uniform_int_distribution<int> c(-20, 20), v(0, 3);
    for (std::size_t i = 0; i < f.index().size(); ++i) f.set_star_at(i, CycloRat::rational(R, c(rng), v(rng)));
    f.c0 = CycloRat::from_int(R, c(rng));
    f.pairing = CycloRat::from_int(R, c(rng));
    return f;
}

/// Draws edges until `want` of them evaluate without a depth error.
/// Returns the number of skipped draws through `skipped`.
template <class Fn>
int sample_edges(const Field& F, std::mt19937_64& rng, int want, int kmin, int kmax, Fn fn, int* skipped = nullptr) {
    int done = 0, skip = 0;
    while (done < want && skip < 50 * want) {
        auto e = tree::random_edge(F, rng, kmin, kmax, rng() % 2 == 0);
        try {
            fn(e);
            ++done;
        } catch (const DepthError&) {
            ++skip;
        }
    }
    if (skipped) *skipped = skip;
    return done;
}

}  // namespace tc::testing

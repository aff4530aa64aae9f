#pragma once

#include <map>
#include <vector>

#include "treecochain/cochain.hpp"

namespace tc {

/// Square-free level n = p_1 ... p_s with its prime factors in a fixed
/// order. Divisors of n are encoded as bit masks over that order.
struct Level {
    Poly n;
    std::vector<Poly> primes;

    int s() const { return static_cast<int>(primes.size()); }
    unsigned full_mask() const { return (1u << s()) - 1; }
};

/// Validates monic, irreducible and pairwise distinct.
Level make_level(const Field& F, const std::vector<Poly>& primes);
/// Factors n; throws unless n is monic and square-free.
Level level_of(const Field& F, const Poly& n);
Poly divisor(const Field& F, const Level& L, unsigned mask);
/// Mask of a monic divisor of n.
unsigned mask_of(const Field& F, const Level& L, const Poly& d);

struct EpsVector {
    std::vector<int> signs;

    int eps_d(unsigned mask) const;
    bool is_one() const;
    bool operator==(const EpsVector& o) const { return signs == o.signs; }
    bool operator!=(const EpsVector& o) const { return signs != o.signs; }
};

/// "+-+" style text, one character per prime.
std::string eps_str(const EpsVector& e);
EpsVector eps_parse(const std::string& s);
/// All 2^s sign vectors, first entry varying slowest, + before -.
std::vector<EpsVector> all_eps(int s);
/// eps_i = (-1)^deg p_i.
EpsVector eps_H(const Level& L);
/// eps_H with the sign at the last prime reversed.
EpsVector eps_H_s(const Level& L);
i128 N_of(const Field& F, const Level& L, const EpsVector& e);
i128 nu_of(const Field& F, const Level& L, const EpsVector& e);

/// Closed form on the half-line: q^(i+1) on e_i, 1 + q - q^(i+1) on bar e_i.
i128 etilde_closed(const Field& F, const TreeEdge& e);
/// Level 1 data: c0 = q, f*(m) = (1 - q^2) sigma(m) / q^(1 + deg m).
FourierData etilde_fourier(FieldPtr F, const ScalarRing& R, int depth);

/// sum_d coeffs[d] * Etilde|B_d, divided by nu.
struct EisCombo {
    Level level;
    std::map<unsigned, i128> coeffs;
    i128 nu = 1;
};

EisCombo e_eps_combo(const Field& F, const Level& L, const EpsVector& e);
/// Clears common factors and zero coefficients.
EisCombo combo_normalize(EisCombo c);
bool combo_equal(const EisCombo& a, const EisCombo& b);
EisCombo combo_add(const EisCombo& a, const EisCombo& b);
EisCombo combo_scale(const EisCombo& a, i128 k);
EisCombo combo_apply_W(const Field& F, const EisCombo& c, unsigned m);
EisCombo combo_apply_U(const Field& F, const EisCombo& c, int i);
/// h + h|W_p U_p; the result lives at level n / p_i.
EisCombo trace_down(const Field& F, const EisCombo& c, int i);
/// A level n/p_i combo seen at level n.
EisCombo combo_embed(const Field& F, const EisCombo& c, const Level& big);
/// True when every coefficient / nu is an integer divisible by M.
bool combo_vanishes_mod(const EisCombo& c, i128 M);

/// Exact data, or reduced into R when R is a mod ring.
FourierData combo_fourier(FieldPtr F, const ScalarRing& R, const EisCombo& c, int depth);
FourierData build_E_eps(FieldPtr F, const ScalarRing& R, const Level& L, const EpsVector& e, int depth);

struct OrderCertificate {
    i128 N = 0, nu = 1, order = 1;
    bool cuspidal = false;    // a c0 = 0 in Z/ell^r with a = ell^r / order
    bool harmonic = false;    // a * pairing = 0
    bool nonzero = false;     // E^eps is nonzero mod ell, so a E^eps has order exactly `order`
    bool tight = false;       // (a / ell) E^eps is not cuspidal when ell | a
    bool within_hypotheses = true;  // ell does not divide q(q - 1)
    bool ok() const { return cuspidal && harmonic && nonzero && tight; }
};

/// Theorem-order verifier. Throws when ell | q(q - 1) unless
/// enforce_hypotheses is off, in which case the same computation runs and
/// the certificate is marked as outside the hypotheses.
OrderCertificate eisenstein_order(FieldPtr F, const Level& L, const EpsVector& e, int ell, int r,
                                  bool enforce_hypotheses = true);
/// Same, reusing exact E^eps data of depth >= order_depth(L).
OrderCertificate eisenstein_order_from(const FourierData& E, const Level& L, const EpsVector& e, int ell, int r,
                                       bool enforce_hypotheses = true);
int order_depth(const Level& L);

}  // namespace tc

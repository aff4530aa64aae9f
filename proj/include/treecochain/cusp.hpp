#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treecochain/eisenstein.hpp"
#include "treecochain/snf.hpp"

namespace tc {

/// Cusps [m], m | n, stored in divisor-mask order (bit i <-> p_i).
struct CuspSet {
    Level level;
    std::vector<Poly> labels;
    std::size_t size() const { return labels.size(); }
};

CuspSet cusp_set(const Field& F, const Level& L);

/// Integer vector indexed by cusp mask.
using CuspVector = std::vector<BigInt>;

BigInt cusp_degree(const CuspVector& v);
BigInt to_big(i128 x);

/// W_d [m] = [m d / (m, d)^2]; on masks this is m xor d.
unsigned cusp_w_action(const Level& L, unsigned d, unsigned m);
Poly cusp_w_action(const Field& F, const Level& L, const Poly& d, const Poly& m);
CuspVector cusp_w_apply(const Level& L, const CuspVector& v, unsigned d);

/// Class of the point (a : b), as the mask of gcd(b, n). Throws unless
/// gcd(a, b) = 1.
unsigned cusp_classify(const Field& F, const Level& L, const Poly& a, const Poly& b);

/// Oracle independent of the gcd invariant: looks for an explicit
/// gamma = [[al, be], [n c, de]] in Gamma_0(n) with gamma (1, m)^t
/// proportional to (a, b)^t, scanning deg c <= max_deg (the other entries
/// are then forced). Returns the first m that admits one, nullopt if the
/// bounded scan finds none.
std::optional<unsigned> cusp_classify_search(const Field& F, const Level& L, const Poly& a, const Poly& b, int max_deg);

/// [m]-entry |n| |(m, d)|^2 / (|m| |d|).
CuspVector div_delta(const Field& F, const Level& L, unsigned d);

struct RelationLattice {
    Level level;
    std::vector<CuspVector> generators;  // div(Delta_d) - div(Delta_d') for d < d'
};

RelationLattice relation_lattice(const Field& F, const Level& L);

/// D^eps = sum_m eps_m [m].
CuspVector d_eps(const Level& L, const EpsVector& e);
/// sum_d eps_d div(Delta_d).
CuspVector div_delta_eps(const Field& F, const Level& L, const EpsVector& e);
/// div(Delta_1) - div(Delta_{p_i}).
CuspVector div_delta_ratio(const Field& F, const Level& L, int i);
/// (|p| - 1) sum_{m | n'} (|n'| / |m|) ([m] - [m p]) with p = p_i, n' = n / p.
CuspVector delta_ratio_formula(const Field& F, const Level& L, int i);

/// Div^0 / lattice, coordinates x_j for [m_j] - [1], j >= 1.
struct CuspQuotient {
    Level level;
    SmithForm snf;
    std::vector<BigInt> elementary;  // invariant factors > 1
    int free_rank = 0;
};

CuspQuotient cusp_quotient(const Field& F, const RelationLattice& P);
/// Order of a degree-0 vector in the quotient; nullopt for infinite order.
std::optional<BigInt> quotient_order(const CuspQuotient& Q, const CuspVector& x);
bool in_lattice(const CuspQuotient& Q, const CuspVector& x);

/// ell-adic valuation of a nonzero integer.
int ord_ell(BigInt x, int ell);

struct EpsOrderRow {
    EpsVector eps;
    i128 N = 0, nu = 1;
    std::optional<BigInt> order;  // of D^eps
    bool expansion_ok = false;    // div(Delta^eps) = eps_n N D^eps
    bool w_ok = false;            // W_{p_i} D^eps = eps_i D^eps
    bool sandwich_ok = false;     // at every ell not dividing q(q-1)
};

struct CuspGroupReport {
    CuspQuotient quotient;
    std::vector<EpsOrderRow> rows;  // every eps != 1
    bool ok() const;
};

CuspGroupReport cusp_group(const Field& F, const Level& L);

/// prod (|p_i| - 1)(|p_i| + 1)^(s - 1).
BigInt rho(const Field& F, const Level& L);

struct ExponentReport {
    BigInt rho;
    std::vector<BigInt> elementary;
    bool divides = false;     // full rank and every invariant factor divides rho
    bool pullbacks_ok = false;  // pullbacks of level n/p relations are relations
    bool identities_ok = false; // the pullback combinations and div(Delta/Delta_p)
    bool p_part_trivial = false;
    bool ok() const { return divides && pullbacks_ok && identities_ok && p_part_trivial; }
};

ExponentReport exponent_check(const Field& F, const Level& L);

std::string big_str(const BigInt& x);

}  // namespace tc

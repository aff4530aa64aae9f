#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "treecochain/cyclo.hpp"
#include "treecochain/tree.hpp"

namespace tc {

/// Raised when an evaluation needs Fourier coefficients beyond the
/// stored depth.
class DepthError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Gamma_0(n)-invariant pseudo-harmonic cochain, stored by its Fourier
/// data: f0(1) = c0, f*(m) for monic m with deg m <= depth, and the
/// constant f(e) + f(bar e).
///
/// The f* table is dense over MonicIndex(q, depth). Each entry holds p-1
/// cyclotomic coordinates; exact mode keeps integer numerators over a
/// shared denominator p^den_exp, mod mode keeps residues.
class FourierData {
public:
    FourierData(FieldPtr F, ScalarRing R, Poly level, int depth);

    const Field& field() const { return *F_; }
    const FieldPtr& field_ptr() const { return F_; }
    const ScalarRing& ring() const { return R_; }
    const Poly& level() const { return level_; }
    int depth() const { return depth_; }
    const MonicIndex& index() const { return *idx_; }

    CycloRat c0;
    CycloRat pairing;

    /// f*(m) for monic m; throws DepthError when deg m > depth.
    CycloRat star(const Poly& m) const;
    CycloRat star_at(std::size_t i) const;
    void set_star_at(std::size_t i, const CycloRat& v);
    void set_star(const Poly& m, const CycloRat& v) { set_star_at(idx_->index(m), v); }

    /// Raw access for the evaluation kernels.
    const std::vector<i128>& numerators() const { return num_; }
    std::vector<i128>& numerators() { return num_; }
    int den_exp() const { return V_; }
    void set_den_exp(int v) { V_ = v; }
    /// True when every f*(m) is a rational number.
    bool rational() const;
    /// Removes common factors of p from the numerators.
    void normalize();

    /// Sum over monic m of degree d of f*(m), as a scalar.
    CycloRat degree_sum(int d) const;

    bool operator==(const FourierData& o) const;

private:
    FieldPtr F_;
    ScalarRing R_;
    Poly level_;
    int depth_;
    std::shared_ptr<const MonicIndex> idx_;
    std::vector<i128> num_;
    int V_ = 0;
};

namespace cochain {

using Evaluator = std::function<CycloRat(const TreeEdge&)>;

struct EvalOptions {
    /// Sum over every nonzero m with explicit roots of unity instead of
    /// collapsing F_q^x orbits.
    bool reference = false;
    /// eta_0(a) = zeta^(char_power * a); only the reference kernel uses it,
    /// the orbit-collapsed kernel does not depend on the character.
    int char_power = 1;
    /// Positive edges beyond the stored depth are evaluated as
    /// pairing - f(bar e).
    bool pairing_route = false;
};

/// Fourier expansion at the positive edge (k, u); k - 2 <= depth.
CycloRat eval_positive(const FourierData& f, int k, const LaurentPoly& u, const EvalOptions& opt = {});
/// Negative edges go through reduce_to_positive at the level of f.
CycloRat eval(const FourierData& f, const TreeEdge& e, const EvalOptions& opt = {});
/// Holds a reference to f; f must outlive the evaluator.
Evaluator evaluator(const FourierData& f, EvalOptions opt = {});
Evaluator evaluator(FourierData&&, EvalOptions = {}) = delete;

/// f*(m) from edge values at level 2 + deg m.
CycloRat forward_star(const Field& F, const ScalarRing& R, const Evaluator& f, const Poly& m, int char_power = 1);
/// f0(pi^k) from edge values.
CycloRat forward_constant(const Field& F, const ScalarRing& R, const Evaluator& f, int k);

FourierData zero_like(const FourierData& f);
FourierData add(const FourierData& a, const FourierData& b);
FourierData sub(const FourierData& a, const FourierData& b);
FourierData scale(const FourierData& a, const CycloRat& s);
/// Division by an integer coprime to p (checked in exact mode).
FourierData div_exact(const FourierData& a, i128 d);
/// Truncates to a smaller depth.
FourierData truncate(const FourierData& a, int depth);
/// Reinterprets at a multiple of the level (same cochain).
FourierData with_level(const FourierData& a, const Poly& level);
/// Image in (Z/M)[zeta]; the input must be exact.
FourierData reduce_mod(const FourierData& a, std::int64_t M);

FourierData apply_B(const FourierData& f, const Poly& m);
/// p prime dividing the level.
FourierData apply_U(const FourierData& f, const Poly& p);
/// p prime not dividing the level; T = U + B.
FourierData apply_T(const FourierData& f, const Poly& p);
/// K = 1 - |p|^-1 U B; level becomes lcm(level, p) * p.
FourierData apply_K(const FourierData& f, const Poly& p);
/// g with g|B_p = f, for f whose f* vanishes off multiples of p; level n/p.
FourierData level_lower(const FourierData& f, const Poly& p);

/// Atkin-Lehner matrix for m || n with det exactly m. `variant` selects
/// one of two independently built solutions.
GL2F w_matrix(const Field& F, const Poly& n, const Poly& m, int variant = 0);
bool is_w_matrix(const Field& F, const GL2F& w, const Poly& n, const Poly& m);
Evaluator apply_W_pointwise(FieldPtr F, Evaluator f, const GL2F& w);

/// Canonical JSON text (sorted keys, star sorted by the printed m).
std::string to_json(const FourierData& f);

}  // namespace cochain

}  // namespace tc

#pragma once

#include <array>
#include <optional>
#include <string>

#include "jacsplit/isogeny.hpp"

namespace jacsplit {

/// Signals that a fiber-product model came out non-squarefree; candidates
/// hitting this are discarded upstream, not treated as faults.
class not_squarefree_defect : public field_error {
  public:
    explicit not_squarefree_defect(const std::string& msg)
        : field_error(msg) {}
};

/// Point of P^1 over a finite field: a field element or infinity.
using ProjPoint = std::optional<FieldElement>;  // nullopt = infinity

/// Fractional-linear map z |-> (a z + b) / (c z + d), det != 0, normalized
/// so the first nonzero entry in row-major order is 1.
struct MobiusMap {
    // row-major {a, b, c, d}
    std::array<FieldElement, 4> m;

    static MobiusMap from_entries(const FieldElement& a, const FieldElement& b,
                                  const FieldElement& c, const FieldElement& d);
    ProjPoint apply(const ProjPoint& z) const;
    MobiusMap compose(const MobiusMap& o) const;  // this after o
    MobiusMap inverse() const;
    bool is_identity() const;
    bool operator==(const MobiusMap& o) const { return m == o.m; }
};

/// The unique fractional-linear map sending the ordered 2-torsion x-values
/// of E_prime to those of E, matched by the permutation `pairing` (the i-th
/// canonical root of E_prime goes to the pairing[i]-th canonical root of E).
MobiusMap mobius_matching(const EllipticCurve& E, const EllipticCurve& E_prime,
                          const std::array<int, 3>& pairing);

/// The aligned configuration on the x-line of E: both curves' branch data
/// pulled to one P^1. P (the image of the origin of E) is always infinity
/// by the x-coordinate convention; P' = mu(infinity of the E'-side).
struct ConstructionFrame {
    EllipticCurve E_tilde;
    EllipticCurve E;
    EllipticCurve E_prime;
    std::array<int, 3> psi_pairing{0, 1, 2};
    MobiusMap mu;
    ProjPoint P_prime;                  // nullopt <=> degenerate
    bool p_prime_in_two_torsion = false;  // P' among the roots of E's cubic
};

struct DegenerateReport {
    bool flag = false;
    std::string description;
};

/// Degeneration test for a bare curve pair: returns P' = mu(infinity) and a
/// flagged report when P' is again infinity, i.e. when an affine map already
/// aligns the two ordered 2-torsion triples and the branch points coincide.
std::pair<ProjPoint, DegenerateReport> degeneration_check(
    const EllipticCurve& E, const EllipticCurve& E_prime,
    const std::array<int, 3>& pairing);

/// Frame for the codomain of I against E_prime; degenerate iff P' = P.
std::pair<ConstructionFrame, DegenerateReport> compute_frame(
    const IsogenyData& I, const EllipticCurve& E_prime,
    const std::array<int, 3>& pairing);

/// Squarefree hyperelliptic model y^2 = h(x) of genus floor((deg h - 1)/2).
struct HyperellipticModel {
    FiniteField base;
    Poly h;
    u32 genus = 0;
};

/// The double cover of the x-line branched over {P, P'}, pulled back along
/// u: the model y^2 = monic(N - cM), degree ell, genus (ell-1)/2.
HyperellipticModel build_D(const IsogenyData& I, const ConstructionFrame& f);

/// The double cover branched over the E'-side branch data pulled to the
/// E-side, {e1, e2, e3, P'}, pulled back along u: degree ell+3 (or ell+2)
/// model of genus (ell+1)/2.
HyperellipticModel build_D_prime(const IsogenyData& I,
                                 const ConstructionFrame& f);

/// Ramification indices of the fiber of u over t, from the factorization of
/// N - tM (or M when t is infinity); one entry per geometric fiber point,
/// indices summing to deg u.
std::vector<int> ramification_profile(const RationalFunction& u,
                                      const ProjPoint& t);

}  // namespace jacsplit

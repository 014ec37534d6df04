#include "jacsplit/construct.hpp"

#include <algorithm>

namespace jacsplit {

MobiusMap MobiusMap::from_entries(const FieldElement& a, const FieldElement& b,
                                  const FieldElement& c,
                                  const FieldElement& d) {
    if ((a * d - b * c).is_zero())
        throw field_error("mobius map: zero determinant");
    MobiusMap r{{a, b, c, d}};
    for (auto& e : r.m)
        if (!e.is_zero()) {
            FieldElement inv = e.inverse();
            for (auto& x : r.m) x = x * inv;
            break;
        }
    return r;
}

ProjPoint MobiusMap::apply(const ProjPoint& z) const {
    FieldElement num, den;
    if (z.has_value()) {
        num = m[0] * *z + m[1];
        den = m[2] * *z + m[3];
    } else {
        num = m[0];
        den = m[2];
    }
    if (den.is_zero()) return std::nullopt;
    return num / den;
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
    return from_entries(m[0] * o.m[0] + m[1] * o.m[2],
                        m[0] * o.m[1] + m[1] * o.m[3],
                        m[2] * o.m[0] + m[3] * o.m[2],
                        m[2] * o.m[1] + m[3] * o.m[3]);
}

MobiusMap MobiusMap::inverse() const {
    return from_entries(m[3], -m[1], -m[2], m[0]);
}

bool MobiusMap::is_identity() const {
    return m[0].is_one() && m[1].is_zero() && m[2].is_zero() && m[3].is_one();
}

namespace {

// Matrix of the map sending (z0, z1, z2) to (0, 1, infinity):
// z |-> (z - z0)(z1 - z2) / ((z - z2)(z1 - z0)).
MobiusMap to_standard_triple(const FieldElement& z0, const FieldElement& z1,
                             const FieldElement& z2) {
    FieldElement s = z1 - z2, t = z1 - z0;
    return MobiusMap::from_entries(s, -z0 * s, t, -z2 * t);
}

}  // namespace

MobiusMap mobius_matching(const EllipticCurve& E, const EllipticCurve& E_prime,
                          const std::array<int, 3>& pairing) {
    auto e = E.full_two_torsion();
    auto ep = E_prime.full_two_torsion();
    if (!e || !ep)
        throw field_error("mobius matching requires fully rational 2-torsion");
    std::array<int, 3> sorted = pairing;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{0, 1, 2})
        throw field_error("pairing must be a permutation of {0, 1, 2}");
    // send ep[i] to e[pairing[i]]
    MobiusMap src = to_standard_triple((*ep)[0], (*ep)[1], (*ep)[2]);
    MobiusMap tgt = to_standard_triple((*e)[size_t(pairing[0])],
                                       (*e)[size_t(pairing[1])],
                                       (*e)[size_t(pairing[2])]);
    return tgt.inverse().compose(src);
}

std::pair<ProjPoint, DegenerateReport> degeneration_check(
    const EllipticCurve& E, const EllipticCurve& E_prime,
    const std::array<int, 3>& pairing) {
    MobiusMap mu = mobius_matching(E, E_prime, pairing);
    ProjPoint P_prime = mu.apply(std::nullopt);
    DegenerateReport rep;
    rep.flag = !P_prime.has_value();
    if (rep.flag)
        rep.description =
            "degenerate configuration: the branch points coincide and the "
            "genus-2 fiber breaks into two copies of the elliptic curve "
            "glued at the origin";
    return {P_prime, rep};
}

std::pair<ConstructionFrame, DegenerateReport> compute_frame(
    const IsogenyData& I, const EllipticCurve& E_prime,
    const std::array<int, 3>& pairing) {
    ConstructionFrame f;
    f.E_tilde = I.domain;
    f.E = I.codomain;
    f.E_prime = E_prime;
    f.psi_pairing = pairing;
    f.mu = mobius_matching(f.E, E_prime, pairing);
    auto [P_prime, rep] = degeneration_check(f.E, E_prime, pairing);
    f.P_prime = P_prime;
    f.p_prime_in_two_torsion =
        f.P_prime.has_value() && f.E.cubic().evaluate(*f.P_prime).is_zero();
    return {f, rep};
}

HyperellipticModel build_D(const IsogenyData& I, const ConstructionFrame& f) {
    if (!f.P_prime.has_value())
        throw field_error("build_D: degenerate frame");
    if (f.p_prime_in_two_torsion)
        throw field_error("build_D: P' lies over the 2-torsion branch locus");
    Poly G = I.u.num - I.u.den.scaled(*f.P_prime);
    if (poly_gcd(G, G.derivative()).degree() != 0)
        throw not_squarefree_defect("build_D: fiber over P' is ramified");
    u32 ell = u32(I.u.num.degree());
    if (G.degree() != int(ell))
        throw field_error("build_D: degree mismatch");
    return {I.u.num.field(), G.monic(), (ell - 1) / 2};
}

HyperellipticModel build_D_prime(const IsogenyData& I,
                                 const ConstructionFrame& f) {
    if (!f.P_prime.has_value())
        throw field_error("build_D_prime: degenerate frame");
    auto tor = f.E.full_two_torsion();
    if (!tor) throw field_error("build_D_prime: 2-torsion not rational");
    const Poly& N = I.u.num;
    const Poly& M = I.u.den;
    Poly F = N - M.scaled(*f.P_prime);
    for (const FieldElement& e : *tor) F = F * (N - M.scaled(e));
    Poly odd = odd_multiplicity_part(F);
    if (odd.degree() < 3)
        throw not_squarefree_defect("build_D_prime: model collapsed");
    u32 ell = u32(N.degree());
    if (odd.degree() != int(ell) + 3 && odd.degree() != int(ell) + 2)
        throw not_squarefree_defect("build_D_prime: unexpected degree");
    // keep the leading scalar: F = lc * odd * (monic square), and dropping
    // the square must not change the twist class of y^2 = F(x)
    Poly h = odd.scaled(F.leading());
    return {N.field(), h, u32(odd.degree() - 1) / 2};
}

std::vector<int> ramification_profile(const RationalFunction& u,
                                      const ProjPoint& t) {
    int ell = u.num.degree();
    Poly A = t.has_value() ? u.num - u.den.scaled(*t) : u.den;
    std::vector<int> out;
    for (auto& [g, mult] : factor(A))
        for (int i = 0; i < g.degree(); ++i) out.push_back(mult);
    if (A.degree() < ell) out.push_back(ell - A.degree());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace jacsplit

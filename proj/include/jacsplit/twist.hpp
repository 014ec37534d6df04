#pragma once

#include "jacsplit/zeta.hpp"

namespace jacsplit {

/// Elliptic curve over the rational function field K(x):
/// Y^2 = X^3 + A2(x) X^2 + A4(x) X + A6(x), coefficients in K[x].
struct FunctionFieldCurve {
    FiniteField base;
    Poly A2, A4, A6;
};

/// The quadratic twist of E (a curve over K) by h over K(x):
/// Y^2 = X^3 + a2 h X^2 + a4 h^2 X + a6 h^3. Isomorphic to E exactly over
/// the quadratic extension K(x)(sqrt(h)) = K(D).
FunctionFieldCurve make_twist(const EllipticCurve& E,
                              const HyperellipticModel& D);

/// The j-invariant of C as an element of K; throws if it is not constant
/// (it always is for twists).
FieldElement twist_j_invariant(const FunctionFieldCurve& C);

/// Discriminant of C as a polynomial in x.
Poly twist_discriminant(const FunctionFieldCurve& C);

/// Symbolic untwisting identity: substituting X = h x, Y = h w y with
/// w^2 = h turns the twist equation into h^3 times E's equation.
bool untwist_check(const FunctionFieldCurve& C, const EllipticCurve& E,
                   const Poly& h);

struct RankBound {
    u32 bound = 0;
};

/// Rank lower bound of the twist over K(x), inherited from the certified
/// decomposition J_D ~ E1^g over K; requires a fully verified certificate.
RankBound rank_bound(const SplitCertificate& cert);

/// Some curve over F with the given Frobenius trace, found by a
/// deterministic exhaustive scan (guarded); nullopt if none exists.
std::optional<EllipticCurve> find_elliptic_with_trace(const FiniteField& F,
                                                      i64 t);

}  // namespace jacsplit

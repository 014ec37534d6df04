#pragma once

#include <vector>

#include "jacsplit/elliptic.hpp"

namespace jacsplit {

/// One Galois-stable cyclic order-ell subgroup of domain[ell], described by
/// its kernel polynomial (monic, degree (ell-1)/2, dividing psi_ell). The
/// Frobenius character chi satisfies Frob(P) = chi * P on kernel points;
/// point_field_degree = ord(chi) is the degree of the field the points
/// themselves live in, and divides ell - 1.
struct KernelData {
    EllipticCurve domain;
    u32 ell = 0;
    Poly kernel_poly;
    u32 frobenius_chi = 0;
    u32 frobenius_character_order = 0;
    u32 point_field_degree = 0;
};

/// A degree-ell isogeny f: domain -> codomain, (x, y) |-> (u(x), y*v(x)),
/// with u = N/M, deg N = ell, M = kernel_poly^2. Normalized, so v = u'.
struct IsogenyData {
    EllipticCurve domain;
    EllipticCurve codomain;
    RationalFunction u;
    RationalFunction y_map_factor;
};

/// All cyclic order-ell subgroups of E[ell] whose kernel polynomial is
/// defined over the base field, sorted canonically by kernel polynomial.
/// Each candidate (a divisor of psi_ell of degree (ell-1)/2) is admitted
/// only with an explicit proof: a lifted point of exact order ell whose
/// multiples' x-coordinates are exactly the candidate's roots.
std::vector<KernelData> enumerate_rational_kernels(const EllipticCurve& E,
                                                   u32 ell);

/// Recompute chi from scratch (independent of the cached value): lift a
/// kernel point P over the splitting extension and solve Frob(P) = k*P.
u32 frobenius_character(const KernelData& K);

/// Velu's formulas from the kernel polynomial.
IsogenyData velu(const KernelData& K);

/// Checks that the x-part of the isogeny is the degree-ell cover it claims
/// to be: deg N = deg M + 1, gcd(N, M) = 1, M a square of a squarefree
/// polynomial, and the curve identity f * (u')^2 = g(u) holds exactly
/// (f, g the domain/codomain cubics). False on any perturbation.
bool check_cover_compatibility(const IsogenyData& I);

}  // namespace jacsplit

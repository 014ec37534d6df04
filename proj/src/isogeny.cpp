#include "jacsplit/isogeny.hpp"

#include <algorithm>

namespace jacsplit {

namespace {

// First three power sums of the roots of monic h, via Newton's identities.
std::array<FieldElement, 4> power_sums(const Poly& h) {
    const FiniteField& F = h.field();
    int d = h.degree();
    // elementary symmetric functions: e_k = (-1)^k * coeff of x^(d-k)
    auto e = [&](int k) {
        if (k > d) return F.zero();
        FieldElement c = h.coeff(size_t(d - k));
        return k % 2 == 0 ? c : -c;
    };
    std::array<FieldElement, 4> p{F.from_int(d), F.zero(), F.zero(), F.zero()};
    for (int k = 1; k <= 3; ++k) {
        FieldElement s = F.zero();
        for (int i = 1; i < k && i <= d; ++i) {
            FieldElement term = e(i) * p[size_t(k - i)];
            s = (i % 2 == 1) ? s + term : s - term;
        }
        if (k <= d) {
            FieldElement term = F.from_int(k) * e(k);
            s = (k % 2 == 1) ? s + term : s - term;
        }
        p[size_t(k)] = s;
    }
    return p;
}

struct VeluCore {
    Poly N;                 // numerator of the x-map; denominator is h^2
    EllipticCurve codomain;
};

VeluCore velu_core(const EllipticCurve& E, u32 ell, const Poly& h) {
    const FiniteField& F = E.field();
    Poly f = E.cubic();
    Poly fp = f.derivative();
    Poly hp = h.derivative();
    Poly hpp = hp.derivative();
    auto p = power_sums(h);
    FieldElement d = F.from_int(h.degree());

    Poly lin = Poly::from_coeffs(F, {-(p[1] + p[1]), F.from_int(i64(ell))});
    Poly N = lin * h * h - (fp * hp * h).scaled(F.from_int(2)) +
             (f * (hp * hp - hpp * h)).scaled(F.from_int(4));

    FieldElement t = F.from_int(2) *
                     (F.from_int(3) * p[2] + F.from_int(2) * E.a2() * p[1] +
                      E.a4() * d);
    FieldElement w = F.from_int(10) * p[3] + F.from_int(8) * E.a2() * p[2] +
                     F.from_int(6) * E.a4() * p[1] + F.from_int(4) * E.a6() * d;
    EllipticCurve codomain = EllipticCurve::make(
        E.a2(), E.a4() - F.from_int(5) * t,
        E.a6() - F.from_int(4) * E.a2() * t - F.from_int(7) * w);
    return {N, codomain};
}

// The exact identity f * (N'h - 2Nh')^2 = N^3 + A2 N^2 h^2 + A4 N h^4 + A6 h^6
// characterizing that (x, y) |-> (N/h^2, y * d(N/h^2)/dx) maps the domain
// curve into the codomain curve.
bool curve_identity_holds(const EllipticCurve& domain,
                          const EllipticCurve& codomain, const Poly& N,
                          const Poly& h) {
    const FiniteField& F = domain.field();
    Poly V = N.derivative() * h - (N * h.derivative()).scaled(F.from_int(2));
    Poly lhs = domain.cubic() * V * V;
    Poly h2 = h * h, h4 = h2 * h2;
    Poly rhs = N * N * N + (N * N * h2).scaled(codomain.a2()) +
               (N * h4).scaled(codomain.a4()) + (h2 * h4).scaled(codomain.a6());
    return lhs == rhs;
}

struct LiftedPoint {
    FiniteField big;
    Embedding emb;  // base -> big
    EllipticCurve Ebig;
    CurvePoint P;
};

// A point with x-coordinate a root of (an irreducible factor of) h, over the
// smallest extension of the base built here that also contains y.
LiftedPoint lift_kernel_point(const EllipticCurve& E, const Poly& h) {
    const FiniteField& F = E.field();
    auto factors = factor(h);
    const Poly* g = &factors[0].first;
    for (auto& [fac, mult] : factors)
        if (fac.degree() < g->degree()) g = &fac;
    u32 m = u32(g->degree());
    for (u32 scale : {m, 2 * m}) {
        FiniteField big = FiniteField::make(F.characteristic(),
                                            F.degree() * scale);
        Embedding emb = Embedding::make(F, big);
        std::vector<FieldElement> roots = poly_roots(emb.map(*g));
        if (roots.empty())
            throw field_error("kernel lift: factor has no root in its "
                              "splitting field");
        EllipticCurve Ebig = E.base_change(emb);
        for (const FieldElement& x0 : roots) {
            FieldElement y0;
            if (try_sqrt(Ebig.cubic().evaluate(x0), y0))
                return {big, emb, Ebig, CurvePoint::affine(x0, y0)};
        }
        // y needs one more quadratic extension; retry with doubled degree
    }
    throw field_error("kernel lift: point not found over quadratic closure");
}

// Proves that monic h (degree (ell-1)/2, dividing psi_ell) is the kernel
// polynomial of a cyclic order-ell subgroup: lifts P with h(x(P)) = 0,
// checks ell * P = 0 and h(x(kP)) = 0 for k = 1..deg h. On success fills in
// the Frobenius character.
bool prove_kernel(const EllipticCurve& E, u32 ell, const Poly& h, u32& chi) {
    LiftedPoint L = lift_kernel_point(E, h);
    if (L.P.infinity) return false;
    if (!L.Ebig.scalar_mul(i64(ell), L.P).infinity) return false;
    Poly hbig = L.emb.map(h);
    std::vector<CurvePoint> multiples(ell, CurvePoint::inf());
    multiples[1] = L.P;
    for (u32 k = 2; k < ell; ++k)
        multiples[k] = L.Ebig.add(multiples[k - 1], L.P);
    for (u32 k = 1; k <= u32(h.degree()); ++k)
        if (!hbig.evaluate(multiples[k].x).is_zero()) return false;

    u64 q = E.field().cardinality();
    CurvePoint frobP = CurvePoint::affine(L.P.x.pow(q), L.P.y.pow(q));
    for (u32 k = 1; k < ell; ++k)
        if (multiples[k] == frobP) {
            chi = k;
            return true;
        }
    return false;  // subgroup not Galois-stable over the base
}

u32 unit_order_mod(u32 a, u32 ell) {
    u32 x = a % ell, ord = 1;
    while (x != 1) {
        x = u32((u64(x) * a) % ell);
        ++ord;
    }
    return ord;
}

void enumerate_subsets(const std::vector<Poly>& factors, size_t from,
                       int remaining, Poly& acc, std::vector<Poly>& out) {
    if (remaining == 0) {
        out.push_back(acc);
        return;
    }
    for (size_t i = from; i < factors.size(); ++i) {
        if (factors[i].degree() > remaining) continue;
        Poly saved = acc;
        acc = acc * factors[i];
        enumerate_subsets(factors, i + 1, remaining - factors[i].degree(),
                          acc, out);
        acc = saved;
    }
}

}  // namespace

std::vector<KernelData> enumerate_rational_kernels(const EllipticCurve& E,
                                                   u32 ell) {
    if (ell < 3 || ell % 2 == 0 || !is_prime_u64(ell))
        throw field_error("ell must be an odd prime");
    if (ell == E.field().characteristic())
        throw field_error("ell equal to the characteristic is not supported");

    Poly psi = E.division_polynomial(ell);
    if (poly_gcd(psi, psi.derivative()).degree() != 0)
        throw field_error("division polynomial unexpectedly not squarefree");
    // only factors of degree <= (ell-1)/2 can enter a kernel polynomial
    std::vector<Poly> irred;
    for (auto& [g, mult] : factor_up_to(psi, (ell - 1) / 2))
        irred.push_back(g);
    std::sort(irred.begin(), irred.end(), Poly::canonical_less);

    std::vector<Poly> candidates;
    Poly acc = Poly::from_ints(E.field(), {1});
    enumerate_subsets(irred, 0, int(ell - 1) / 2, acc, candidates);

    std::vector<KernelData> out;
    for (const Poly& h : candidates) {
        VeluCore core;
        try {
            core = velu_core(E, ell, h);
        } catch (const field_error&) {
            continue;  // invalid divisor: formulas produce a singular cubic
        }
        if (core.N.degree() != int(ell)) continue;
        if (poly_gcd(core.N, h).degree() != 0) continue;
        if (!curve_identity_holds(E, core.codomain, core.N, h)) continue;
        u32 chi = 0;
        if (!prove_kernel(E, ell, h, chi)) continue;
        u32 ord = unit_order_mod(chi, ell);
        out.push_back({E, ell, h, chi, ord, ord});
    }
    std::sort(out.begin(), out.end(),
              [](const KernelData& a, const KernelData& b) {
                  return Poly::canonical_less(a.kernel_poly, b.kernel_poly);
              });
    return out;
}

u32 frobenius_character(const KernelData& K) {
    u32 chi = 0;
    if (!prove_kernel(K.domain, K.ell, K.kernel_poly, chi))
        throw field_error("frobenius character: invalid kernel data");
    return chi;
}

IsogenyData velu(const KernelData& K) {
    const Poly& h = K.kernel_poly;
    if (!h.is_monic() || h.degree() != int(K.ell - 1) / 2)
        throw field_error("velu: malformed kernel polynomial");
    VeluCore core = velu_core(K.domain, K.ell, h);
    if (core.N.degree() != int(K.ell))
        throw field_error("velu: numerator degree mismatch");
    const FiniteField& F = K.domain.field();
    Poly V = core.N.derivative() * h -
             (core.N * h.derivative()).scaled(F.from_int(2));
    IsogenyData I;
    I.domain = K.domain;
    I.codomain = core.codomain;
    I.u = RationalFunction::make(core.N, h * h);
    I.y_map_factor = RationalFunction::make(V, h * h * h);
    return I;
}

bool check_cover_compatibility(const IsogenyData& I) {
    const Poly& N = I.u.num;
    const Poly& M = I.u.den;
    if (N.degree() != M.degree() + 1) return false;
    if (poly_gcd(N, M).degree() != 0) return false;
    Poly m = squarefree_part(M);
    if (m * m != M) return false;
    if (!curve_identity_holds(I.domain, I.codomain, N, m)) return false;
    const FiniteField& F = I.domain.field();
    Poly V = N.derivative() * m - (N * m.derivative()).scaled(F.from_int(2));
    if (!(RationalFunction::make(V, m * m * m) == I.y_map_factor))
        return false;

    // numeric spot checks: push points through the map
    Poly f = I.domain.cubic();
    u64 q = F.cardinality();
    int checked = 0;
    for (u64 i = 0; i < q && checked < 20; ++i) {
        FieldElement x = F.element_at(i), y, X, vx;
        if (!try_sqrt(f.evaluate(x), y)) continue;
        if (!I.u.evaluate(x, X)) continue;  // kernel x-coordinate: maps to 0
        if (!I.y_map_factor.evaluate(x, vx)) return false;
        FieldElement Y = y * vx;
        if (Y * Y != I.codomain.cubic().evaluate(X)) return false;
        ++checked;
    }
    return true;
}

}  // namespace jacsplit

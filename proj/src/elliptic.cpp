#include "jacsplit/elliptic.hpp"

#include <algorithm>

namespace jacsplit {

EllipticCurve EllipticCurve::make(const FieldElement& a2,
                                  const FieldElement& a4,
                                  const FieldElement& a6) {
    if (a2.field() != a4.field() || a2.field() != a6.field())
        throw field_error("curve coefficients in different fields");
    EllipticCurve E;
    E.f_ = a2.field();
    E.a2_ = a2;
    E.a4_ = a4;
    E.a6_ = a6;
    if (E.discriminant().is_zero())
        throw field_error("singular curve: discriminant is zero");
    return E;
}

Poly EllipticCurve::cubic() const {
    return Poly::from_coeffs(f_, {a6_, a4_, a2_, f_.one()});
}

FieldElement EllipticCurve::discriminant() const {
    FieldElement b2 = f_.from_int(4) * a2_;
    FieldElement b4 = f_.from_int(2) * a4_;
    FieldElement b6 = f_.from_int(4) * a6_;
    FieldElement b8 = f_.from_int(4) * a2_ * a6_ - a4_ * a4_;
    return -b2 * b2 * b8 - f_.from_int(8) * b4 * b4 * b4 -
           f_.from_int(27) * b6 * b6 + f_.from_int(9) * b2 * b4 * b6;
}

FieldElement EllipticCurve::j_invariant() const {
    FieldElement b2 = f_.from_int(4) * a2_;
    FieldElement b4 = f_.from_int(2) * a4_;
    FieldElement c4 = b2 * b2 - f_.from_int(24) * b4;
    return c4 * c4 * c4 / discriminant();
}

bool EllipticCurve::on_curve(const CurvePoint& P) const {
    if (P.infinity) return true;
    if (P.x.field() != f_) return false;
    return P.y * P.y == cubic().evaluate(P.x);
}

CurvePoint EllipticCurve::negate(const CurvePoint& P) const {
    if (P.infinity) return P;
    return CurvePoint::affine(P.x, -P.y);
}

CurvePoint EllipticCurve::add(const CurvePoint& P, const CurvePoint& Q) const {
    if (!on_curve(P) || !on_curve(Q))
        throw field_error("point not on curve");
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    if (P.x == Q.x) {
        if (P.y != Q.y || P.y.is_zero()) return CurvePoint::inf();
        // doubling
        FieldElement num = f_.from_int(3) * P.x * P.x +
                           f_.from_int(2) * a2_ * P.x + a4_;
        FieldElement lam = num / (f_.from_int(2) * P.y);
        FieldElement x3 = lam * lam - a2_ - P.x - P.x;
        FieldElement y3 = lam * (P.x - x3) - P.y;
        return CurvePoint::affine(x3, y3);
    }
    FieldElement lam = (Q.y - P.y) / (Q.x - P.x);
    FieldElement x3 = lam * lam - a2_ - P.x - Q.x;
    FieldElement y3 = lam * (P.x - x3) - P.y;
    return CurvePoint::affine(x3, y3);
}

CurvePoint EllipticCurve::scalar_mul(i64 k, const CurvePoint& P) const {
    if (!on_curve(P)) throw field_error("point not on curve");
    CurvePoint base = P;
    if (k < 0) {
        base = negate(base);
        k = -k;
    }
    CurvePoint r = CurvePoint::inf();
    while (k) {
        if (k & 1) r = add(r, base);
        base = add(base, base);
        k >>= 1;
    }
    return r;
}

u64 EllipticCurve::count_points(u32 extension) const {
    if (extension == 1) {
        SquareTable table(f_);
        return 1 + count_affine_points(cubic(), table);
    }
    FiniteField ext = FiniteField::make(f_.characteristic(),
                                        f_.degree() * extension);
    if (ext.cardinality() > kEnumerationGuard)
        throw field_error("enumeration guard exceeded");
    Embedding e = Embedding::make(f_, ext);
    SquareTable table(ext);
    return 1 + count_affine_points(e.map(cubic()), table);
}

std::pair<i64, bool> EllipticCurve::trace_and_ordinary() const {
    u64 n = count_points(1);
    i64 t = i64(f_.cardinality()) + 1 - i64(n);
    bool ordinary = (t % i64(f_.characteristic())) != 0;
    return {t, ordinary};
}

std::optional<std::array<FieldElement, 3>> EllipticCurve::full_two_torsion()
    const {
    std::vector<FieldElement> roots = poly_roots(cubic());
    if (roots.size() != 3) return std::nullopt;
    // poly_roots output is already lex-sorted
    return std::array<FieldElement, 3>{roots[0], roots[1], roots[2]};
}

Poly EllipticCurve::division_polynomial(u32 n) const {
    if (n % 2 == 0 || n < 3) throw field_error("division polynomial: n must be odd >= 3");
    if (n % f_.characteristic() == 0)
        throw field_error("division polynomial: n divisible by characteristic");
    // f_k convention: psi_k = f_k for odd k, psi_k = 2y f_k for even k,
    // with y^2 = cubic. Recurrences stay in F_q[x].
    Poly fx = cubic();
    FieldElement b2 = f_.from_int(4) * a2_;
    FieldElement b4 = f_.from_int(2) * a4_;
    FieldElement b6 = f_.from_int(4) * a6_;
    FieldElement b8 = f_.from_int(4) * a2_ * a6_ - a4_ * a4_;
    std::vector<Poly> f(std::max<u32>(n + 1, 5), Poly(f_));
    Poly one = Poly::from_ints(f_, {1});
    f[0] = Poly(f_);  // zero
    f[1] = one;
    f[2] = one;
    f[3] = Poly::from_coeffs(
        f_, {b8, f_.from_int(3) * b6, f_.from_int(3) * b4, b2, f_.from_int(3)});
    f[4] = Poly::from_coeffs(
        f_, {b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, f_.from_int(10) * b8,
             f_.from_int(10) * b6, f_.from_int(5) * b4, b2, f_.from_int(2)});
    Poly ff16 = (fx * fx).scaled(f_.from_int(16));
    for (u32 k = 5; k <= n; ++k) {
        u32 m = k / 2;
        if (k % 2 == 1) {
            // k = 2m+1
            Poly t1 = f[m + 2] * f[m] * f[m] * f[m];
            Poly t2 = f[m - 1] * f[m + 1] * f[m + 1] * f[m + 1];
            f[k] = (m % 2 == 0) ? ff16 * t1 - t2 : t1 - ff16 * t2;
        } else {
            // k = 2m
            Poly t = f[m + 2] * f[m - 1] * f[m - 1] -
                     f[m - 2] * f[m + 1] * f[m + 1];
            f[k] = f[m] * t;
        }
    }
    Poly psi = f[n];
    // sanity: degree (n^2-1)/2, leading coefficient n
    if (psi.degree() != int((n * n - 1) / 2))
        throw field_error("division polynomial: degree mismatch");
    return psi;
}

EllipticCurve EllipticCurve::base_change(const Embedding& e) const {
    return EllipticCurve::make(e.map(a2_), e.map(a4_), e.map(a6_));
}

}  // namespace jacsplit

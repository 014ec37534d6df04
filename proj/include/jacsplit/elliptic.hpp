#pragma once

#include <array>
#include <optional>

#include "jacsplit/counting.hpp"
#include "jacsplit/embedding.hpp"
#include "jacsplit/poly.hpp"

namespace jacsplit {

/// Affine point or the point at infinity.
struct CurvePoint {
    bool infinity = true;
    FieldElement x, y;
    static CurvePoint inf() { return CurvePoint{}; }
    static CurvePoint affine(FieldElement px, FieldElement py) {
        return CurvePoint{false, std::move(px), std::move(py)};
    }
    bool operator==(const CurvePoint& o) const {
        if (infinity != o.infinity) return false;
        if (infinity) return true;
        return x == o.x && y == o.y;
    }
    bool operator!=(const CurvePoint& o) const { return !(*this == o); }
};

/// y^2 = x^3 + a2 x^2 + a4 x + a6 over a FiniteField of odd characteristic.
/// The a2 term keeps characteristic 3 fully representable.
class EllipticCurve {
  public:
    EllipticCurve() = default;
    static EllipticCurve make(const FieldElement& a2, const FieldElement& a4,
                              const FieldElement& a6);

    const FiniteField& field() const { return f_; }
    const FieldElement& a2() const { return a2_; }
    const FieldElement& a4() const { return a4_; }
    const FieldElement& a6() const { return a6_; }
    /// The cubic x^3 + a2 x^2 + a4 x + a6.
    Poly cubic() const;
    FieldElement discriminant() const;
    FieldElement j_invariant() const;

    bool on_curve(const CurvePoint& P) const;
    CurvePoint negate(const CurvePoint& P) const;
    CurvePoint add(const CurvePoint& P, const CurvePoint& Q) const;
    CurvePoint scalar_mul(i64 k, const CurvePoint& P) const;

    /// #E(F_{q^m}) by exhaustive character sum; guarded by q^m <= 2^26.
    u64 count_points(u32 extension = 1) const;
    /// (trace of Frobenius over the base field, ordinary?).
    std::pair<i64, bool> trace_and_ordinary() const;

    /// The three roots of the cubic, canonically (lexicographically) ordered,
    /// when the 2-torsion is fully rational.
    std::optional<std::array<FieldElement, 3>> full_two_torsion() const;

    /// psi_n(x) for odd n >= 3 coprime to the characteristic; degree
    /// (n^2-1)/2 with leading coefficient n.
    Poly division_polynomial(u32 n) const;

    EllipticCurve base_change(const Embedding& e) const;

    bool operator==(const EllipticCurve& o) const {
        return f_ == o.f_ && a2_ == o.a2_ && a4_ == o.a4_ && a6_ == o.a6_;
    }
    bool operator!=(const EllipticCurve& o) const { return !(*this == o); }

  private:
    FiniteField f_;
    FieldElement a2_, a4_, a6_;
};

}  // namespace jacsplit

#include "doctest.h"
#include "jacsplit/elliptic.hpp"

using namespace jacsplit;

namespace {
EllipticCurve curve(const FiniteField& F, i64 a2, i64 a4, i64 a6) {
    return EllipticCurve::make(F.from_int(a2), F.from_int(a4), F.from_int(a6));
}
}  // namespace

TEST_CASE("group law oracles") {
    FiniteField F5 = FiniteField::make(5, 1);
    EllipticCurve E = curve(F5, 0, 1, 0);  // y^2 = x^3 + x
    CurvePoint P = CurvePoint::affine(F5.from_int(2), F5.zero());
    CHECK(E.add(P, CurvePoint::inf()) == P);
    CurvePoint Q = CurvePoint::affine(F5.from_int(3), F5.zero());
    CHECK(E.add(P, Q) == CurvePoint::affine(F5.zero(), F5.zero()));
    CHECK(E.add(P, E.negate(P)).infinity);
    // group of order 4 annihilates every point
    for (u64 i = 0; i < 5; ++i) {
        FieldElement x = F5.element_at(i), s;
        if (!try_sqrt(E.cubic().evaluate(x), s)) continue;
        CurvePoint R = CurvePoint::affine(x, s);
        CHECK(E.scalar_mul(4, R).infinity);
        CHECK(E.scalar_mul(0, R).infinity);
        CHECK(E.scalar_mul(1, R) == R);
    }
}

TEST_CASE("singular curves rejected") {
    FiniteField F5 = FiniteField::make(5, 1);
    CHECK_THROWS_AS(curve(F5, 0, 0, 0), field_error);  // y^2 = x^3
}

TEST_CASE("point counts and traces") {
    FiniteField F5 = FiniteField::make(5, 1);
    EllipticCurve E1 = curve(F5, 0, 1, 0);
    CHECK(E1.count_points() == 4);
    auto [t1, ord1] = E1.trace_and_ordinary();
    CHECK(t1 == 2);
    CHECK(ord1);

    FiniteField F3 = FiniteField::make(3, 1);
    EllipticCurve E2 = curve(F3, 0, 1, 2);  // y^2 = x^3 + x + 2
    CHECK(E2.count_points() == 4);
    auto [t2, ord2] = E2.trace_and_ordinary();
    CHECK(t2 == 0);
    CHECK_FALSE(ord2);

    EllipticCurve E3 = curve(F3, 1, 0, 2);  // y^2 = x^3 + x^2 + 2
    auto [t3, ord3] = E3.trace_and_ordinary();
    CHECK(t3 == 1);
    CHECK(ord3);

    // Hasse bound over a few curves
    FiniteField F9 = FiniteField::make(3, 2);
    for (u64 i = 0; i < 9; ++i) {
        FieldElement a6 = F9.element_at(i);
        EllipticCurve E = EllipticCurve::make(F9.zero(), F9.one(), a6);
        i64 t = E.trace_and_ordinary().first;
        CHECK(t * t <= 4 * 9);
    }
}

TEST_CASE("extension counts are consistent") {
    FiniteField F3 = FiniteField::make(3, 1);
    EllipticCurve E = curve(F3, 1, 0, 2);
    auto [t, ord] = E.trace_and_ordinary();
    // N_2 = q^2 + 1 - (t^2 - 2q)
    CHECK(i64(E.count_points(2)) == 9 + 1 - (t * t - 2 * 3));
}

TEST_CASE("j-invariants") {
    FiniteField F5 = FiniteField::make(5, 1);
    CHECK(curve(F5, 0, 1, 0).j_invariant() == F5.from_int(3));  // 1728 mod 5
    FiniteField F7 = FiniteField::make(7, 1);
    CHECK(curve(F7, 0, 0, 1).j_invariant() == F7.zero());
    // quadratic twists share j: scale (a4, a6) by (u^2, u^3), u = 3
    EllipticCurve E = curve(F7, 0, 2, 3);
    EllipticCurve Et = curve(F7, 0, 2 * 9, 3 * 27);
    CHECK(E.j_invariant() == Et.j_invariant());
}

TEST_CASE("two-torsion") {
    FiniteField F5 = FiniteField::make(5, 1);
    // y^2 = x(x-1)(x+1) = x^3 - x
    EllipticCurve E = curve(F5, 0, -1, 0);
    auto tor = E.full_two_torsion();
    REQUIRE(tor.has_value());
    CHECK((*tor)[0] == F5.from_int(0));
    CHECK((*tor)[1] == F5.from_int(1));
    CHECK((*tor)[2] == F5.from_int(4));

    auto tor2 = curve(F5, 0, 1, 0).full_two_torsion();
    REQUIRE(tor2.has_value());
    CHECK((*tor2)[0] == F5.from_int(0));
    CHECK((*tor2)[1] == F5.from_int(2));
    CHECK((*tor2)[2] == F5.from_int(3));

    FiniteField F3 = FiniteField::make(3, 1);
    CHECK_FALSE(curve(F3, 0, 1, 0).full_two_torsion().has_value());
}

TEST_CASE("division polynomials") {
    FiniteField F5 = FiniteField::make(5, 1);
    EllipticCurve E = curve(F5, 0, 1, 0);
    Poly psi3 = E.division_polynomial(3);
    CHECK(psi3.degree() == 4);
    // psi_3 = 3x^4 + 4a2 x^3 + 6a4 x^2 + 12a6 x + (4a2a6 - a4^2)
    CHECK(psi3 == Poly::from_ints(F5, {-1, 0, 6, 0, 3}));
    CHECK(E.division_polynomial(7).degree() == 24);

    // every root of psi_3 over a splitting field gives a point of order 3;
    // here psi_3 is irreducible of degree 4, so the x-coordinates live in
    // F_{5^4} and the points themselves in F_{5^8}
    FiniteField F58 = FiniteField::make(5, 8);
    Embedding e = Embedding::make(F5, F58);
    EllipticCurve E25 = E.base_change(e);
    std::vector<FieldElement> roots = poly_roots(e.map(psi3));
    CHECK(!roots.empty());
    int verified = 0;
    for (const FieldElement& xi : roots) {
        FieldElement y;
        if (!try_sqrt(E25.cubic().evaluate(xi), y)) continue;
        CurvePoint P = CurvePoint::affine(xi, y);
        CHECK(E25.scalar_mul(3, P).infinity);
        CHECK_FALSE(E25.scalar_mul(1, P).infinity);
        ++verified;
    }
    CHECK(verified > 0);

    FiniteField F3 = FiniteField::make(3, 1);
    EllipticCurve E3 = curve(F3, 1, 0, 2);
    CHECK_THROWS_AS(E3.division_polynomial(3), field_error);  // 3 | p
    CHECK(E3.division_polynomial(5).degree() == 12);
}

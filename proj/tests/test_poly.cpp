#include <cstdlib>

#include "doctest.h"
#include "jacsplit/counting.hpp"
#include "jacsplit/elliptic.hpp"
#include "jacsplit/poly.hpp"

using namespace jacsplit;

TEST_CASE("gcd oracles") {
    FiniteField F5 = FiniteField::make(5, 1);
    Poly a = Poly::from_ints(F5, {-1, 0, 1});  // x^2 - 1
    Poly b = Poly::from_ints(F5, {-1, 1});     // x - 1
    CHECK(poly_gcd(a, b) == b);
    CHECK(poly_gcd(a, Poly(F5)) == a.monic());

    FiniteField F3 = FiniteField::make(3, 1);
    Poly c = Poly::from_ints(F3, {2, 0, 1, 1});  // x^3 + x^2 + 2
    Poly d = Poly::from_ints(F3, {0, 2});        // 2x
    CHECK(poly_gcd(c, d) == Poly::from_ints(F3, {1}));
}

TEST_CASE("squarefree part") {
    FiniteField F5 = FiniteField::make(5, 1);
    Poly xm1 = Poly::from_ints(F5, {-1, 1});
    Poly xp1 = Poly::from_ints(F5, {1, 1});
    CHECK(squarefree_part(xm1 * xm1 * xp1) == xm1 * xp1);

    Poly irr = Poly::from_ints(F5, {2, 0, 1});  // x^2 + 2, irreducible
    CHECK(squarefree_part(irr.scaled(F5.from_int(3))) == irr);

    // x^3 - 2 = (x - 2)^3 over F_3 since 2^3 = 2
    FiniteField F3 = FiniteField::make(3, 1);
    Poly insep = Poly::from_ints(F3, {-2, 0, 0, 1});
    Poly sf = squarefree_part(insep);
    CHECK(sf.degree() == 1);
    CHECK(sf == Poly::from_ints(F3, {-2, 1}));
}

TEST_CASE("odd multiplicity part") {
    FiniteField F5 = FiniteField::make(5, 1);
    Poly xm1 = Poly::from_ints(F5, {-1, 1});
    Poly xp1 = Poly::from_ints(F5, {1, 1});
    Poly x = Poly::x(F5);
    // x^3 (x-1)^2 (x+1) -> x (x+1)
    CHECK(odd_multiplicity_part(x * x * x * xm1 * xm1 * xp1) == x * xp1);
    CHECK(odd_multiplicity_part(xm1 * xm1) == Poly::from_ints(F5, {1}));
}

TEST_CASE("factor oracles") {
    FiniteField F3 = FiniteField::make(3, 1);
    Poly f = Poly::from_ints(F3, {1, 0, 1});  // x^2 + 1, irreducible
    auto fac = factor(f);
    REQUIRE(fac.size() == 1);
    CHECK(fac[0].first == f);
    CHECK(fac[0].second == 1);

    FiniteField F5 = FiniteField::make(5, 1);
    auto fac2 = factor(Poly::from_ints(F5, {-1, 0, 1}));
    REQUIRE(fac2.size() == 2);
    CHECK(fac2[0].first * fac2[1].first == Poly::from_ints(F5, {-1, 0, 1}));
    CHECK(fac2[0].first.degree() == 1);

    // psi_3 of y^2 = x^3 + x over F_5: 3x^4 + x^2 + 4
    EllipticCurve E = EllipticCurve::make(F5.zero(), F5.one(), F5.zero());
    Poly psi3 = E.division_polynomial(3);
    CHECK(psi3 == Poly::from_ints(F5, {4, 0, 1, 0, 3}));
    auto fac3 = factor(psi3);
    Poly prod = Poly::constant(psi3.leading());
    for (auto& [g, m] : fac3)
        for (int i = 0; i < m; ++i) prod = prod * g;
    CHECK(prod == psi3);
}

TEST_CASE("factor re-multiplication, many random polynomials") {
    std::srand(12345);
    int done = 0;
    for (auto [p, d] : {std::pair<u32, u32>{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
        FiniteField F = FiniteField::make(p, d);
        u64 q = F.cardinality();
        for (int trial = 0; trial < 130; ++trial) {
            int deg = 1 + std::rand() % 9;
            std::vector<FieldElement> c;
            for (int i = 0; i < deg; ++i)
                c.push_back(F.element_at(u64(std::rand()) % q));
            c.push_back(F.element_at(1 + u64(std::rand()) % (q - 1)));
            Poly f = Poly::from_coeffs(F, c);
            auto fac = factor(f);
            Poly prod = Poly::constant(f.leading());
            int degsum = 0;
            for (auto& [g, m] : fac) {
                CHECK(g.is_monic());
                CHECK(is_irreducible(g));
                degsum += g.degree() * m;
                for (int i = 0; i < m; ++i) prod = prod * g;
            }
            CHECK(degsum == f.degree());
            CHECK(prod == f);
            ++done;
        }
    }
    CHECK(done >= 500);
}

TEST_CASE("factorization is deterministic") {
    FiniteField F7 = FiniteField::make(7, 1);
    Poly f = Poly::from_ints(F7, {3, 1, 4, 1, 5, 1});
    auto a = factor(f);
    auto b = factor(f);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].first == b[i].first);
        CHECK(a[i].second == b[i].second);
    }
}

TEST_CASE("roots") {
    FiniteField F5 = FiniteField::make(5, 1);
    auto r = poly_roots(Poly::from_ints(F5, {0, 1, 0, 1}));  // x^3 + x
    REQUIRE(r.size() == 3);
    CHECK(r[0] == F5.from_int(0));
    CHECK(r[1] == F5.from_int(2));
    CHECK(r[2] == F5.from_int(3));
}

TEST_CASE("rational functions reduce") {
    FiniteField F5 = FiniteField::make(5, 1);
    Poly x = Poly::x(F5);
    Poly xm1 = Poly::from_ints(F5, {-1, 1});
    RationalFunction r =
        RationalFunction::make((x * xm1).scaled(F5.from_int(2)), xm1 * xm1);
    CHECK(r.num == x.scaled(F5.from_int(2)));
    CHECK(r.den == xm1);
    FieldElement v;
    CHECK_FALSE(r.evaluate(F5.one(), v));  // pole
    REQUIRE(r.evaluate(F5.from_int(2), v));
    CHECK(v == F5.from_int(4));
}

TEST_CASE("counting kernels agree") {
    FiniteField F = FiniteField::make(3, 4);
    SquareTable table(F);
    Poly h = Poly::from_ints(F, {2, 1, 0, 1, 0, 1});
    CHECK(count_affine_points(h, table) == count_affine_points_serial(h, table));
}

TEST_CASE("projective point count of an elliptic model") {
    FiniteField F5 = FiniteField::make(5, 1);
    SquareTable t(F5);
    Poly h = Poly::from_ints(F5, {0, 1, 0, 1});  // x^3 + x
    CHECK(count_projective_hyperelliptic(h, t) == 4);
}

#include "doctest.h"
#include "jacsplit/embedding.hpp"
#include "jacsplit/field.hpp"

using namespace jacsplit;

TEST_CASE("canonical moduli") {
    CHECK(FiniteField::make(3, 1).modulus_coeffs().empty());
    // x^2 + 1 over F_3: no root among 0,1,2
    CHECK(FiniteField::make(3, 2).modulus_coeffs() == std::vector<u32>{1, 0, 1});
    // x^2 + 1 has root 2 mod 5; x^2 + 2 has no root
    CHECK(FiniteField::make(5, 2).modulus_coeffs() == std::vector<u32>{2, 0, 1});
}

TEST_CASE("basic arithmetic") {
    FiniteField F3 = FiniteField::make(3, 1);
    CHECK(F3.from_int(2) + F3.from_int(2) == F3.one());

    FiniteField F5 = FiniteField::make(5, 1);
    CHECK(F5.from_int(2).inverse() == F5.from_int(3));

    FiniteField F9 = FiniteField::make(3, 2);
    FieldElement i = F9.generator();
    CHECK(i * i == F9.from_int(2));
}

TEST_CASE("mismatched parents throw") {
    FiniteField F3 = FiniteField::make(3, 1);
    FiniteField F5 = FiniteField::make(5, 1);
    CHECK_THROWS_AS(F3.one() + F5.one(), field_error);
    CHECK_THROWS_AS(F3.one().inverse() * F5.from_int(2), field_error);
}

TEST_CASE("division by zero throws") {
    FiniteField F5 = FiniteField::make(5, 1);
    CHECK_THROWS_AS(F5.one() / F5.zero(), field_error);
    CHECK_THROWS_AS(F5.zero().inverse(), field_error);
}

TEST_CASE("quadratic character") {
    FiniteField F7 = FiniteField::make(7, 1);
    FiniteField F5 = FiniteField::make(5, 1);
    CHECK(quadratic_character(F7.zero()) == 0);
    CHECK(quadratic_character(F5.zero()) == 0);
    CHECK(quadratic_character(F7.from_int(2)) == 1);   // 3^2 = 2
    CHECK(quadratic_character(F5.from_int(2)) == -1);  // squares mod 5: {0,1,4}
}

TEST_CASE("canonical square roots") {
    FiniteField F7 = FiniteField::make(7, 1);
    FieldElement s;
    REQUIRE(try_sqrt(F7.from_int(4), s));
    CHECK(s == F7.from_int(2));  // not 5: lex-smaller root wins
    REQUIRE(try_sqrt(F7.from_int(2), s));
    CHECK(s == F7.from_int(3));
    FiniteField F5 = FiniteField::make(5, 1);
    CHECK_FALSE(try_sqrt(F5.from_int(2), s));
}

TEST_CASE("field axioms on all small fields") {
    // exhaustive on every field of order <= 3^4
    for (auto [p, d] : {std::pair<u32, u32>{3, 1}, {3, 2}, {3, 4},
                        {5, 1}, {5, 2}, {7, 1}, {7, 2}, {79, 1}}) {
        FiniteField F = FiniteField::make(p, d);
        u64 q = F.cardinality();
        u64 limit = std::min<u64>(q, 81);
        for (u64 i = 0; i < limit; ++i) {
            FieldElement a = F.element_at(i);
            CHECK(a.index() == i);
            CHECK(a + F.zero() == a);
            CHECK(a * F.one() == a);
            CHECK(a - a == F.zero());
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == F.one());
                CHECK(a.pow(q - 1) == F.one());
            }
            CHECK(a.frobenius().pow(1) == a.pow(p));
            for (u64 j = 0; j < limit; j += 7) {
                FieldElement b = F.element_at(j);
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                FieldElement c = F.element_at((i * 31 + j) % q);
                CHECK((a + b) * c == a * c + b * c);
            }
        }
    }
}

TEST_CASE("character is multiplicative") {
    for (auto [p, d] : {std::pair<u32, u32>{3, 4}, {5, 2}, {7, 2}}) {
        FiniteField F = FiniteField::make(p, d);
        u64 q = F.cardinality();
        for (u64 i = 1; i < q; ++i)
            for (u64 j = i; j < q; j += 5) {
                FieldElement a = F.element_at(i), b = F.element_at(j);
                CHECK(quadratic_character(a * b) ==
                      quadratic_character(a) * quadratic_character(b));
            }
    }
}

TEST_CASE("embeddings") {
    FiniteField F3 = FiniteField::make(3, 1);
    FiniteField F9 = FiniteField::make(3, 2);
    FiniteField F81 = FiniteField::make(3, 4);

    Embedding id = Embedding::make(F9, F9);
    FieldElement i = F9.generator();
    CHECK(id.map(i) == i);

    Embedding e39 = Embedding::make(F3, F9);
    CHECK(e39.map(F3.from_int(2)) == F9.from_int(2));

    Embedding e981 = Embedding::make(F9, F81);
    FieldElement im = e981.image_of_generator();
    CHECK(im * im == -F81.one());
    // canonical: lexicographically smaller of the two roots of x^2 + 1
    CHECK(FieldElement::lex_less(im, -im));

    // towers commute: F_3 -> F_9 -> F_81 equals F_3 -> F_81
    Embedding e381 = Embedding::make(F3, F81);
    for (u64 k = 0; k < 3; ++k) {
        FieldElement a = F3.element_at(k);
        CHECK(e981.map(e39.map(a)) == e381.map(a));
    }
    // homomorphism + unmap round trip
    for (u64 k = 0; k < 9; ++k)
        for (u64 l = 0; l < 9; l += 2) {
            FieldElement a = F9.element_at(k), b = F9.element_at(l);
            CHECK(e981.map(a * b) == e981.map(a) * e981.map(b));
            CHECK(e981.map(a + b) == e981.map(a) + e981.map(b));
            FieldElement back;
            REQUIRE(e981.unmap(e981.map(a), back));
            CHECK(back == a);
        }
    // something outside the image
    FieldElement g81 = F81.generator(), out;
    bool in_f9 = e981.unmap(g81, out);
    CHECK((!in_f9 || e981.map(out) == g81));
}

TEST_CASE("embedding rejects non-subfields") {
    CHECK_THROWS_AS(Embedding::make(FiniteField::make(3, 2),
                                    FiniteField::make(3, 3)),
                    field_error);
    CHECK_THROWS_AS(Embedding::make(FiniteField::make(3, 1),
                                    FiniteField::make(5, 1)),
                    field_error);
}

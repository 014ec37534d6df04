#pragma once

#include <utility>
#include <vector>

#include "jacsplit/field.hpp"

namespace jacsplit {

/// Univariate polynomial over a FiniteField, little-endian coefficients,
/// trailing zeros stripped. The zero polynomial has an empty coefficient
/// vector and degree() == kZeroDegree.
class Poly {
  public:
    static constexpr int kZeroDegree = -1;  // sentinel, never a valid index

    Poly() = default;
    explicit Poly(FiniteField f) : field_(std::move(f)) {}
    static Poly from_coeffs(const FiniteField& f, std::vector<FieldElement> c);
    static Poly from_ints(const FiniteField& f, const std::vector<i64>& c);
    static Poly x(const FiniteField& f);
    static Poly constant(const FieldElement& c);

    const FiniteField& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }
    FieldElement coeff(size_t i) const;
    const std::vector<FieldElement>& coeffs() const { return c_; }
    FieldElement leading() const;
    bool is_monic() const;
    Poly monic() const;
    Poly derivative() const;
    FieldElement evaluate(const FieldElement& x) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(const FieldElement& c) const;
    Poly shifted(size_t k) const;  // multiply by x^k
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Canonical total order: by degree, then coefficient tuples from the
    /// constant term up, each compared lexicographically on coordinates.
    static bool canonical_less(const Poly& a, const Poly& b);

  private:
    FiniteField field_;
    std::vector<FieldElement> c_;
    void strip();
};

Poly poly_gcd(const Poly& f, const Poly& g);
Poly poly_pow_mod(const Poly& base, u64 e, const Poly& mod);
/// f(g) mod m by Horner.
Poly poly_compose_mod(const Poly& f, const Poly& g, const Poly& m);
Poly poly_pow(const Poly& base, u32 e);

bool is_irreducible(const Poly& f);

/// Monic product of the distinct irreducible factors (the radical). Purely
/// inseparable parts are reduced by p-th-root extraction of coefficients.
Poly squarefree_part(const Poly& f);

/// Monic product of the irreducible factors of odd multiplicity, i.e. the
/// representative of f modulo squares.
Poly odd_multiplicity_part(const Poly& f);

/// Full factorization: monic irreducible factors with multiplicities,
/// sorted canonically. Deterministic despite internal randomness (the
/// equal-degree splitting stream is seeded from a hash of the input).
std::vector<std::pair<Poly, int>> factor(const Poly& f);

/// Only the irreducible factors of degree <= max_degree (with
/// multiplicities); larger factors are neither split nor returned. Same
/// deterministic stream as factor(), so shared factors come out identical.
std::vector<std::pair<Poly, int>> factor_up_to(const Poly& f,
                                               u32 max_degree);

/// Roots of f in its coefficient field.
std::vector<FieldElement> poly_roots(const Poly& f);

/// Reduced rational function: denominator monic and coprime to numerator.
struct RationalFunction {
    Poly num, den;
    static RationalFunction make(const Poly& n, const Poly& d);
    bool operator==(const RationalFunction& o) const {
        return num == o.num && den == o.den;
    }
    /// Value at x; false if x is a pole.
    bool evaluate(const FieldElement& x, FieldElement& out) const;
};

}  // namespace jacsplit

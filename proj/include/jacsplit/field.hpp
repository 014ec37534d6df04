#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace jacsplit {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

class FieldElement;

namespace detail {
struct FieldRep {
    u32 p = 0;
    u32 degree = 0;
    // Monic modulus over F_p, little-endian, length degree+1. For degree 1
    // this is {0, 1} internally; serialization omits it.
    std::vector<u32> modulus;
};
}  // namespace detail

/// Error thrown on violated preconditions (division by zero, mismatched
/// parents, non-prime characteristic, ...).
class field_error : public std::runtime_error {
  public:
    explicit field_error(const std::string& msg) : std::runtime_error(msg) {}
};

bool is_prime_u64(u64 n);

/// A finite field F_{p^d}, p an odd prime, with an explicit monic irreducible
/// modulus over F_p. Immutable and freely shareable.
class FiniteField {
  public:
    FiniteField() = default;

    /// Field with the lexicographically smallest monic irreducible modulus of
    /// the given degree (non-leading coefficients compared as integer tuples,
    /// highest degree first). Deterministic across runs.
    static FiniteField make(u32 p, u32 degree);

    /// Field with a caller-supplied modulus (little-endian, monic, length
    /// degree+1); used when deserializing. Validates irreducibility.
    static FiniteField with_modulus(u32 p, const std::vector<u32>& modulus);

    bool valid() const { return rep_ != nullptr; }
    u32 characteristic() const { return rep_->p; }
    u32 degree() const { return rep_->degree; }
    u64 cardinality() const;
    /// Little-endian modulus coefficients; empty for the prime field.
    std::vector<u32> modulus_coeffs() const;
    const std::vector<u32>& modulus_raw() const { return rep_->modulus; }

    bool operator==(const FiniteField& o) const;
    bool operator!=(const FiniteField& o) const { return !(*this == o); }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(i64 v) const;
    FieldElement from_coords(std::vector<u32> coords) const;
    /// Element whose coordinate vector is the base-p digits of `index`,
    /// little-endian (coords[0] = index % p). Bijection [0, q) -> field.
    FieldElement element_at(u64 index) const;
    /// The class of x for degree >= 2 (a root of the modulus); 1 for degree 1.
    FieldElement generator() const;

  private:
    std::shared_ptr<const detail::FieldRep> rep_;
    friend class FieldElement;
};

/// An element of a FiniteField: coordinate vector of length `degree` with
/// entries in [0, p), little-endian in the modulus root. Always reduced.
class FieldElement {
  public:
    FieldElement() = default;

    const FiniteField& field() const { return field_; }
    const std::vector<u32>& coords() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    /// Base-p packing of the coordinate vector (inverse of element_at).
    u64 index() const;
    /// The element as an integer if it lies in the prime subfield.
    bool in_prime_field() const;
    u32 prime_value() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(u64 e) const;
    /// p^k-power Frobenius.
    FieldElement frobenius(u32 k = 1) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    /// Lexicographic order on coordinate vectors, constant coordinate first.
    static bool lex_less(const FieldElement& a, const FieldElement& b);

  private:
    FieldElement(FiniteField f, std::vector<u32> c)
        : field_(std::move(f)), c_(std::move(c)) {}
    FiniteField field_;
    std::vector<u32> c_;
    friend class FiniteField;
};

/// +1 nonzero square, 0 zero, -1 nonsquare; a^((q-1)/2) mapped to {+-1, 0}.
int quadratic_character(const FieldElement& a);

struct NotASquare {};

/// Canonical square root: the one with lexicographically smaller coordinate
/// vector. Empty on nonsquares.
bool try_sqrt(const FieldElement& a, FieldElement& out);

}  // namespace jacsplit

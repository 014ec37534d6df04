#pragma once

#include "jacsplit/field.hpp"
#include "jacsplit/poly.hpp"

namespace jacsplit {

/// Field homomorphism F_{p^m} -> F_{p^n}, m | n, determined by the image of
/// the source generator: the lexicographically smallest root of the source
/// modulus in the target (so towers compose deterministically).
class Embedding {
  public:
    static Embedding make(const FiniteField& source, const FiniteField& target);

    const FiniteField& source() const { return source_; }
    const FiniteField& target() const { return target_; }
    const FieldElement& image_of_generator() const { return gen_image_; }

    FieldElement map(const FieldElement& a) const;
    Poly map(const Poly& f) const;
    /// Preimage in the source field; false when a is not in the image.
    bool unmap(const FieldElement& a, FieldElement& out) const;

  private:
    FiniteField source_, target_;
    FieldElement gen_image_;
};

}  // namespace jacsplit

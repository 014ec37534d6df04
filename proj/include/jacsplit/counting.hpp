#pragma once

#include <vector>

#include "jacsplit/poly.hpp"

namespace jacsplit {

/// Hard guard for every exhaustive enumeration over a field.
constexpr u64 kEnumerationGuard = u64(1) << 26;

/// One bit per field element: is it a nonzero square? Built once per field
/// and cached by callers; indexing follows FieldElement::index().
class SquareTable {
  public:
    explicit SquareTable(const FiniteField& f);
    /// Quadratic character of the element with the given index: {+1, 0, -1}.
    int chi(u64 index) const {
        if (index == 0) return 0;
        return (bits_[index >> 6] >> (index & 63)) & 1 ? 1 : -1;
    }
    const FiniteField& field() const { return field_; }

  private:
    FiniteField field_;
    std::vector<u64> bits_;
};

/// Number of affine solutions of y^2 = h(x) over h's coefficient field,
/// i.e. sum over x of (1 + chi(h(x))). OpenMP kernel.
u64 count_affine_points(const Poly& h, const SquareTable& table);
/// Serial reference implementation, kept for testing and benchmarking.
u64 count_affine_points_serial(const Poly& h, const SquareTable& table);

/// Points of y^2 = h(x) on the smooth projective model, including the
/// points at infinity (1 for odd deg h; 2 or 0 for even deg h depending on
/// whether the leading coefficient is a square).
u64 count_projective_hyperelliptic(const Poly& h, const SquareTable& table);

}  // namespace jacsplit

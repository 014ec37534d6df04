#pragma once

#include <gmpxx.h>

#include <optional>

#include "jacsplit/construct.hpp"

namespace jacsplit {

/// Counts fed to lpoly_from_counts do not come from any curve of this genus.
class count_inconsistency : public field_error {
  public:
    explicit count_inconsistency(const std::string& msg) : field_error(msg) {}
};

/// Numerator of the zeta function: L(T) = sum a_i T^i, a_0 = 1, length
/// 2g + 1, with the functional equation a_{2g-i} = q^{g-i} a_i.
struct LPolynomial {
    std::vector<mpz_class> a;
    mpz_class q;
    u32 g = 0;

    bool operator==(const LPolynomial& o) const {
        return a == o.a && q == o.q && g == o.g;
    }
};

/// N_m of the smooth projective model of y^2 = h(x) over F_{q^m};
/// guarded by q^m <= 2^26.
u64 count_points_hyperelliptic(const HyperellipticModel& H, u32 m);

/// Recover L from N_1..N_g by Newton's identities on S_m = q^m + 1 - N_m,
/// completed by the functional equation. Exact rational intermediates; a
/// non-integer coefficient throws count_inconsistency.
LPolynomial lpoly_from_counts(const std::vector<i64>& counts,
                              const mpz_class& q, u32 g);

/// N_m predicted by L, any m >= 1.
mpz_class counts_from_lpoly(const LPolynomial& L, u32 m);

/// L-polynomial over the degree-n extension: characteristic polynomial of
/// the n-th power of Frobenius, exact integer arithmetic.
LPolynomial base_change(const LPolynomial& L, u32 n);

/// Degree of L mod p, in [0, g]; ordinary iff equal to g.
u32 p_rank(const LPolynomial& L, u32 p);

struct CartierManinResult {
    std::vector<std::vector<FieldElement>> matrix;  // g x g
    u32 stable_rank = 0;
};

/// Hasse-Witt matrix M_{i,j} = coeff of x^(ip-j) in h^((p-1)/2) and the
/// rank of M * M^(p) * ... * M^(p^(a*g-1)), a the field degree over F_p;
/// ordinary iff the stable rank equals g.
CartierManinResult cartier_manin(const HyperellipticModel& H);

/// True iff a_i = 0 for every index i not divisible by g, i.e.
/// L(T) = 1 - a T^g + q^g T^(2g). Vacuous for g = 1.
bool inert_shape_check(const LPolynomial& L, u32 g);

struct EllipticPower {
    mpz_class a;    // trace: L = (1 - aT + q_K T^2)^g
    bool ordinary;  // a not divisible by p
};

/// Try to write L_K as the g-th power of an elliptic quadratic, verified by
/// exact expansion; also requires the Weil bound a^2 <= 4 q_K.
std::optional<EllipticPower> power_of_elliptic(const LPolynomial& L_K, u32 g,
                                               u32 p);

/// The spectral facts certifying one constructed example.
struct SplitCertificate {
    LPolynomial L_over_k;
    u32 K_degree = 0;  // = ell - 1
    LPolynomial L_over_K;
    mpz_class a;
    mpz_class q_K;
    bool ordinary = false;
    bool inert_shape_ok = false;
    u32 p_rank_value = 0;
    u32 cartier_manin_rank = 0;
};

}  // namespace jacsplit

#include "jacsplit/zeta.hpp"

#include <algorithm>

#include "jacsplit/counting.hpp"

namespace jacsplit {

u64 count_points_hyperelliptic(const HyperellipticModel& H, u32 m) {
    const FiniteField& F = H.base;
    if (m == 1) {
        SquareTable table(F);
        return count_projective_hyperelliptic(H.h, table);
    }
    FiniteField ext = FiniteField::make(F.characteristic(), F.degree() * m);
    if (ext.cardinality() > kEnumerationGuard)
        throw field_error("enumeration guard exceeded");
    Embedding e = Embedding::make(F, ext);
    SquareTable table(ext);
    return count_projective_hyperelliptic(e.map(H.h), table);
}

LPolynomial lpoly_from_counts(const std::vector<i64>& counts,
                              const mpz_class& q, u32 g) {
    if (counts.size() != g)
        throw field_error("lpoly_from_counts: need exactly g counts");
    // S_m = q^m + 1 - N_m; then m*a_m = -(S_1 a_{m-1} + ... + S_m a_0)
    std::vector<mpq_class> S(g + 1), a(2 * g + 1);
    mpz_class qm = 1;
    for (u32 m = 1; m <= g; ++m) {
        qm *= q;
        S[m] = mpq_class(qm + 1 - counts[m - 1]);
    }
    a[0] = 1;
    for (u32 m = 1; m <= g; ++m) {
        mpq_class acc = 0;
        for (u32 i = 1; i <= m; ++i) acc += S[i] * a[m - i];
        a[m] = -acc / m;
        a[m].canonicalize();
        if (a[m].get_den() != 1)
            throw count_inconsistency(
                "counts produce a non-integer L-coefficient");
    }
    LPolynomial L;
    L.q = q;
    L.g = g;
    L.a.resize(2 * g + 1);
    for (u32 i = 0; i <= g; ++i) L.a[i] = a[i].get_num();
    mpz_class qpow = 1;
    for (u32 i = g; i-- > 0;) {
        qpow *= q;  // q^(g-i)
        L.a[2 * g - i] = qpow * L.a[i];
    }
    return L;
}

namespace {

// Power sums S_1..S_n of the inverse roots of L, from its coefficients.
std::vector<mpz_class> power_sums_of(const LPolynomial& L, u32 n) {
    u32 d = 2 * L.g;
    std::vector<mpz_class> S(n + 1);
    for (u32 m = 1; m <= n; ++m) {
        mpz_class acc = 0;
        for (u32 i = 1; i < m && i <= d; ++i) acc += L.a[i] * S[m - i];
        if (m <= d) acc += m * L.a[m];
        S[m] = -acc;
    }
    return S;
}

using Mat = std::vector<std::vector<mpz_class>>;

Mat mat_mul(const Mat& A, const Mat& B) {
    size_t n = A.size();
    Mat C(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (A[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

Mat mat_pow(Mat A, u32 e) {
    size_t n = A.size();
    Mat R(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) R[i][i] = 1;
    while (e) {
        if (e & 1) R = mat_mul(R, A);
        A = mat_mul(A, A);
        e >>= 1;
    }
    return R;
}

// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier; returns the
// monic coefficient vector c with c[n] = 1, c[0] the constant term. All
// divisions are exact.
std::vector<mpz_class> char_poly(const Mat& A) {
    size_t n = A.size();
    std::vector<mpz_class> c(n + 1);
    c[n] = 1;
    Mat M(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) M[i][i] = 1;  // M_1 = I
    for (size_t k = 1; k <= n; ++k) {
        Mat AM = mat_mul(A, M);
        mpz_class tr = 0;
        for (size_t i = 0; i < n; ++i) tr += AM[i][i];
        mpz_class ck;
        mpz_divexact_ui(ck.get_mpz_t(), tr.get_mpz_t(), (unsigned long)(k));
        c[n - k] = -ck;
        if (k < n) {
            M = AM;  // M_{k+1} = A M_k + c_{n-k} I
            for (size_t i = 0; i < n; ++i) M[i][i] += c[n - k];
        }
    }
    return c;
}

}  // namespace

mpz_class counts_from_lpoly(const LPolynomial& L, u32 m) {
    std::vector<mpz_class> S = power_sums_of(L, m);
    mpz_class qm;
    mpz_pow_ui(qm.get_mpz_t(), L.q.get_mpz_t(), m);
    return qm + 1 - S[m];
}

LPolynomial base_change(const LPolynomial& L, u32 n) {
    if (n == 0) throw field_error("base_change: n must be positive");
    if (n == 1) return L;
    u32 d = 2 * L.g;
    // companion matrix of the reciprocal polynomial sum a_i x^(d-i)
    Mat C(d, std::vector<mpz_class>(d, 0));
    for (u32 i = 0; i + 1 < d; ++i) C[i + 1][i] = 1;
    for (u32 i = 0; i < d; ++i) C[i][d - 1] = -L.a[d - i];
    std::vector<mpz_class> c = char_poly(mat_pow(C, n));
    LPolynomial out;
    out.g = L.g;
    mpz_pow_ui(out.q.get_mpz_t(), L.q.get_mpz_t(), n);
    out.a.resize(d + 1);
    for (u32 i = 0; i <= d; ++i) out.a[i] = c[d - i];
    if (out.a[0] != 1)
        throw field_error("base_change: constant term normalization failed");
    return out;
}

u32 p_rank(const LPolynomial& L, u32 p) {
    for (u32 i = 2 * L.g + 1; i-- > 0;)
        if (L.a[i] % p != 0) return i;
    return 0;
}

CartierManinResult cartier_manin(const HyperellipticModel& H) {
    const FiniteField& F = H.base;
    u32 p = F.characteristic(), g = H.genus;
    Poly hp = poly_pow(H.h, (p - 1) / 2);
    CartierManinResult R;
    R.matrix.assign(g, std::vector<FieldElement>(g, F.zero()));
    for (u32 i = 1; i <= g; ++i)
        for (u32 j = 1; j <= g; ++j)
            R.matrix[i - 1][j - 1] = hp.coeff(size_t(i) * p - j);

    // stable product M * M^(p) * ... over a*g - 1 twists
    auto twist = [&](const std::vector<std::vector<FieldElement>>& M, u32 k) {
        auto T = M;
        for (auto& row : T)
            for (auto& e : row) e = e.frobenius(k);
        return T;
    };
    auto mul = [&](const std::vector<std::vector<FieldElement>>& A,
                   const std::vector<std::vector<FieldElement>>& B) {
        std::vector<std::vector<FieldElement>> C(
            g, std::vector<FieldElement>(g, F.zero()));
        for (u32 i = 0; i < g; ++i)
            for (u32 k = 0; k < g; ++k)
                for (u32 j = 0; j < g; ++j)
                    C[i][j] = C[i][j] + A[i][k] * B[k][j];
        return C;
    };
    auto prod = R.matrix;
    for (u32 k = 1; k < F.degree() * g; ++k)
        prod = mul(prod, twist(R.matrix, k));

    // rank by Gaussian elimination
    u32 rank = 0;
    auto M = prod;
    for (u32 col = 0; col < g && rank < g; ++col) {
        u32 pivot = rank;
        while (pivot < g && M[pivot][col].is_zero()) ++pivot;
        if (pivot == g) continue;
        std::swap(M[pivot], M[rank]);
        FieldElement inv = M[rank][col].inverse();
        for (u32 j = col; j < g; ++j) M[rank][j] = M[rank][j] * inv;
        for (u32 r = 0; r < g; ++r) {
            if (r == rank || M[r][col].is_zero()) continue;
            FieldElement f = M[r][col];
            for (u32 j = col; j < g; ++j)
                M[r][j] = M[r][j] - f * M[rank][j];
        }
        ++rank;
    }
    R.stable_rank = rank;
    return R;
}

bool inert_shape_check(const LPolynomial& L, u32 g) {
    for (u32 i = 1; i < 2 * L.g; ++i)
        if (i % g != 0 && L.a[i] != 0) return false;
    return true;
}

std::optional<EllipticPower> power_of_elliptic(const LPolynomial& L_K, u32 g,
                                               u32 p) {
    if (L_K.g != g || L_K.a.size() != 2 * g + 1) return std::nullopt;
    // T^1 coefficient of (1 - aT + qT^2)^g is -g*a
    if (L_K.a[1] % g != 0) return std::nullopt;
    mpz_class a = -L_K.a[1] / g;
    if (a * a > 4 * L_K.q) return std::nullopt;
    // exact expansion
    std::vector<mpz_class> acc{1};
    for (u32 i = 0; i < g; ++i) {
        std::vector<mpz_class> next(acc.size() + 2, 0);
        for (size_t j = 0; j < acc.size(); ++j) {
            next[j] += acc[j];
            next[j + 1] -= a * acc[j];
            next[j + 2] += L_K.q * acc[j];
        }
        acc = std::move(next);
    }
    if (acc != L_K.a) return std::nullopt;
    return EllipticPower{a, a % p != 0};
}

}  // namespace jacsplit

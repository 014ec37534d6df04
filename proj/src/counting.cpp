#include "jacsplit/counting.hpp"

#include "jacsplit/logtable.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jacsplit {

SquareTable::SquareTable(const FiniteField& f) : field_(f) {
    u64 q = f.cardinality();
    if (q > kEnumerationGuard)
        throw field_error("enumeration guard exceeded: field too large");
    if (log_tables_feasible(f)) {
        // nonzero squares are exactly the even powers of the generator
        auto T = log_tables(f);
        bits_.assign((q + 63) / 64, 0);
        for (u64 k = 0; k < T->q1; k += 2) {
            u64 idx = T->exp[k];
            bits_[idx >> 6] |= u64(1) << (idx & 63);
        }
        return;
    }
    bits_.assign((q + 63) / 64, 0);
    std::vector<u64> local((q + 63) / 64, 0);
#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<u64> mine(local.size(), 0);
#pragma omp for schedule(static)
        for (i64 i = 1; i < i64(q); ++i) {
            FieldElement e = field_.element_at(u64(i));
            u64 idx = (e * e).index();
            mine[idx >> 6] |= u64(1) << (idx & 63);
        }
#pragma omp critical
        for (size_t w = 0; w < local.size(); ++w) local[w] |= mine[w];
    }
#else
    for (u64 i = 1; i < q; ++i) {
        FieldElement e = field_.element_at(i);
        u64 idx = (e * e).index();
        local[idx >> 6] |= u64(1) << (idx & 63);
    }
#endif
    bits_ = std::move(local);
}

u64 count_affine_points_serial(const Poly& h, const SquareTable& table) {
    const FiniteField& F = h.field();
    if (F != table.field()) throw field_error("square table for wrong field");
    u64 q = F.cardinality();
    u64 acc = 0;
    for (u64 i = 0; i < q; ++i) {
        FieldElement x = F.element_at(i);
        acc += u64(1 + table.chi(h.evaluate(x).index()));
    }
    return acc;
}

u64 count_affine_points(const Poly& h, const SquareTable& table) {
    const FiniteField& F = h.field();
    if (F != table.field()) throw field_error("square table for wrong field");
    u64 q = F.cardinality();
    if (log_tables_feasible(F)) {
        // evaluate in log space: Horner with exponent shifts and Zech adds,
        // reading the character off the parity of the result
        auto Tp = log_tables(F);
        const LogTables& T = *Tp;
        if (h.is_zero()) return q;  // y^2 = 0 has the single y = 0 fiber
        const auto& c = h.coeffs();
        const int d = h.degree();
        std::vector<u32> lc(c.size());
        for (size_t i = 0; i < c.size(); ++i) lc[i] = T.log[c[i].index()];
        auto weight = [&](u32 v) -> u64 {
            if (v == T.zero) return 1;       // h(x) = 0: y = 0 only
            return (v & 1) == 0 ? 2 : 0;     // square: two y; else none
        };
        u64 acc = weight(lc[0]);  // x = 0
        const u64 q1 = T.q1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : acc)
#endif
        for (i64 k = 0; k < i64(q1); ++k) {  // x = g^k
            u32 v = lc[size_t(d)];
            for (int i = d - 1; i >= 0; --i) {
                if (v != T.zero) {
                    u64 s = v + u64(k);
                    if (s >= q1) s -= q1;
                    v = u32(s);
                }
                v = T.add(v, lc[size_t(i)]);
            }
            acc += weight(v);
        }
        return acc;
    }
    u64 acc = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : acc)
    for (i64 i = 0; i < i64(q); ++i) {
        FieldElement x = F.element_at(u64(i));
        acc += u64(1 + table.chi(h.evaluate(x).index()));
    }
#else
    acc = count_affine_points_serial(h, table);
#endif
    return acc;
}

u64 count_projective_hyperelliptic(const Poly& h, const SquareTable& table) {
    u64 n = count_affine_points(h, table);
    if (h.degree() % 2 == 1) return n + 1;
    int chi = table.chi(h.leading().index());
    return n + (chi == 1 ? 2 : 0);
}

}  // namespace jacsplit

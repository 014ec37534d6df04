#pragma once

#include <memory>
#include <vector>

#include "jacsplit/field.hpp"

namespace jacsplit {

/// Exp/log/Zech tables over F_q (q odd): multiplication becomes exponent
/// addition, addition a single Zech lookup, and the quadratic character is
/// the parity of the discrete log. Built once per field and cached; the
/// enumeration-heavy kernels use these to avoid allocating field elements
/// in their inner loops.
struct LogTables {
    u64 q1 = 0;             // q - 1
    u32 zero = 0;           // sentinel exponent standing in for 0 (== q1)
    u32 gen_index = 0;      // element index of the generator (a nonsquare)
    std::vector<u32> exp;   // k -> element index of g^k
    std::vector<u32> log;   // element index -> k; log of 0 is the sentinel
    std::vector<u32> zech;  // k -> log(1 + g^k); sentinel when that is 0

    /// log(g^a + g^b); either argument (and the result) may be the sentinel.
    u32 add(u32 la, u32 lb) const {
        if (la == zero) return lb;
        if (lb == zero) return la;
        u64 d = lb >= la ? u64(lb) - la : u64(lb) + q1 - la;
        u32 z = zech[d];
        if (z == zero) return zero;
        u64 r = u64(la) + z;
        if (r >= q1) r -= q1;
        return u32(r);
    }
};

/// Largest field cardinality the table cache will serve.
constexpr u64 kLogTableGuard = u64(1) << 22;

bool log_tables_feasible(const FiniteField& F);

/// Shared cached tables for F; throws field_error beyond the guard.
std::shared_ptr<const LogTables> log_tables(const FiniteField& F);

}  // namespace jacsplit

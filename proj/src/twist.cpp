#include "jacsplit/twist.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "jacsplit/logtable.hpp"

namespace jacsplit {

FunctionFieldCurve make_twist(const EllipticCurve& E,
                              const HyperellipticModel& D) {
    if (E.field() != D.base)
        throw field_error("make_twist: curve and model over different fields");
    const Poly& h = D.h;
    if (h.degree() < 1)
        throw field_error("make_twist: twisting polynomial must be "
                          "nonconstant");
    if (poly_gcd(h, h.derivative()).degree() != 0)
        throw field_error("make_twist: twisting polynomial must be "
                          "squarefree");
    FunctionFieldCurve C;
    C.base = E.field();
    C.A2 = h.scaled(E.a2());
    C.A4 = (h * h).scaled(E.a4());
    C.A6 = (h * h * h).scaled(E.a6());
    return C;
}

Poly twist_discriminant(const FunctionFieldCurve& C) {
    const FiniteField& F = C.base;
    auto s = [&](i64 v) { return F.from_int(v); };
    Poly b2 = C.A2.scaled(s(4));
    Poly b4 = C.A4.scaled(s(2));
    Poly b6 = C.A6.scaled(s(4));
    Poly b8 = (C.A2 * C.A6).scaled(s(4)) - C.A4 * C.A4;
    return -b2 * b2 * b8 - (b4 * b4 * b4).scaled(s(8)) -
           (b6 * b6).scaled(s(27)) + (b2 * b4 * b6).scaled(s(9));
}

FieldElement twist_j_invariant(const FunctionFieldCurve& C) {
    const FiniteField& F = C.base;
    auto s = [&](i64 v) { return F.from_int(v); };
    Poly b2 = C.A2.scaled(s(4));
    Poly b4 = C.A4.scaled(s(2));
    Poly c4 = b2 * b2 - b4.scaled(s(24));
    Poly delta = twist_discriminant(C);
    if (delta.is_zero()) throw field_error("twist is singular");
    RationalFunction j = RationalFunction::make(c4 * c4 * c4, delta);
    if (j.den.degree() != 0 || j.num.degree() > 0)
        throw field_error("j-invariant is not constant");
    return j.num.is_zero() ? F.zero() : j.num.coeff(0) / j.den.coeff(0);
}

bool untwist_check(const FunctionFieldCurve& C, const EllipticCurve& E,
                   const Poly& h) {
    // with X = h x, Y = h w y, w^2 = h: the twist equation becomes
    // h^3 y^2 = h^3 x^3 + A2 h^2 x^2 + A4 h x + A6, i.e. h^3 * (E's cubic
    // evaluated coefficient-wise). Check the x-side identity per power of x.
    Poly h2 = h * h, h3 = h2 * h;
    return C.A2 * h2 == h3.scaled(E.a2()) && C.A4 * h == h3.scaled(E.a4()) &&
           C.A6 == h3.scaled(E.a6()) && C.base == E.field();
}

RankBound rank_bound(const SplitCertificate& cert) {
    if (!cert.ordinary || !cert.inert_shape_ok)
        throw field_error("rank_bound: certificate not fully verified");
    if (!(cert.a * cert.a <= 4 * cert.q_K))
        throw field_error("rank_bound: trace out of Weil range");
    return RankBound{cert.L_over_k.g};
}

namespace {

// Affine point arithmetic on y^2 = x^3 + a2 x^2 + a4 x + a6 carried out
// entirely in log space: coordinates are discrete logs (sentinel = the
// field element 0), so one curve operation is a handful of table lookups.
// Used only as a prefilter; every hit is re-verified by an exact count.
struct LogCurve {
    const LogTables& T;
    u32 ca2, ca4, ca6;  // curve coefficients
    u32 l2c, l3c;       // logs of the field constants 2 and 3
    u32 half;           // log(-1) = (q-1)/2

    u32 neg(u32 u) const {
        if (u == T.zero) return u;
        u64 r = u64(u) + half;
        if (r >= T.q1) r -= T.q1;
        return u32(r);
    }
    u32 mul(u32 a, u32 b) const {
        if (a == T.zero || b == T.zero) return T.zero;
        u64 r = u64(a) + b;
        if (r >= T.q1) r -= T.q1;
        return u32(r);
    }
    u32 div(u32 a, u32 b) const {  // b must be nonzero
        if (a == T.zero) return T.zero;
        u64 r = u64(a) + T.q1 - b;
        if (r >= T.q1) r -= T.q1;
        return u32(r);
    }
    u32 sub(u32 a, u32 b) const { return T.add(a, neg(b)); }

    struct Pt {
        u32 x = 0, y = 0;
        bool inf = true;
    };

    Pt dbl(const Pt& P) const {
        if (P.inf || P.y == T.zero) return Pt{};
        u32 xx = mul(P.x, P.x);
        u32 num = T.add(mul(l3c, xx),
                        T.add(mul(l2c, mul(ca2, P.x)), ca4));
        u32 lam = div(num, mul(l2c, P.y));
        u32 x3 = sub(sub(mul(lam, lam), ca2), mul(l2c, P.x));
        u32 y3 = sub(mul(lam, sub(P.x, x3)), P.y);
        return Pt{x3, y3, false};
    }
    Pt add(const Pt& P, const Pt& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        if (P.x == Q.x) {
            if (P.y == Q.y) return dbl(P);
            return Pt{};  // opposite points
        }
        u32 lam = div(sub(Q.y, P.y), sub(Q.x, P.x));
        u32 x3 = sub(sub(sub(mul(lam, lam), ca2), P.x), Q.x);
        u32 y3 = sub(mul(lam, sub(P.x, x3)), P.y);
        return Pt{x3, y3, false};
    }
    Pt scalar(u64 n, const Pt& P) const {
        Pt R{};
        for (int b = 63; b >= 0; --b) {
            R = dbl(R);
            if ((n >> b) & 1) R = add(R, P);
        }
        return R;
    }
    u32 value_at(u32 lx) const {  // f(x) for x with log lx
        if (lx == T.zero) return ca6;
        u32 v = mul(lx, mul(lx, lx));
        v = T.add(v, mul(ca2, mul(lx, lx)));
        v = T.add(v, mul(ca4, lx));
        return T.add(v, ca6);
    }

    /// First point with nonzero y, scanning x = 0, g^0, g^1, ...
    bool witness(Pt& out) const {
        u32 v = value_at(T.zero);
        if (v != T.zero && (v & 1) == 0) {
            out = Pt{T.zero, u32(v / 2), false};
            return true;
        }
        for (u64 k = 0; k < T.q1; ++k) {
            v = value_at(u32(k));
            if (v != T.zero && (v & 1) == 0) {
                out = Pt{u32(k), u32(v / 2), false};
                return true;
            }
        }
        return false;
    }
    /// Does (the exponent of) the curve group divide n at this witness?
    bool kills(u64 n) const {
        Pt P;
        if (!witness(P)) return true;  // no usable point: let the count decide
        return scalar(n, P).inf;
    }
};

// Affine points on y^2 = x^3 + a2 x^2 + a4 x + a6, coefficients in log form.
u64 count_cubic_logspace(const LogTables& T, u32 l2, u32 l4, u32 l6) {
    const u64 q1 = T.q1;
    u64 n = 0;
    if (l6 == T.zero)
        n += 1;
    else if ((l6 & 1) == 0)
        n += 2;
    for (u64 k = 0; k < q1; ++k) {  // x = g^k
        u32 acc = u32(3 * k % q1);
        if (l2 != T.zero) acc = T.add(acc, u32((l2 + 2 * k) % q1));
        if (l4 != T.zero) {
            u64 t1 = l4 + k;
            if (t1 >= q1) t1 -= q1;
            acc = T.add(acc, u32(t1));
        }
        acc = T.add(acc, l6);
        if (acc == T.zero)
            n += 1;
        else if ((acc & 1) == 0)
            n += 2;
    }
    return n;
}

// Fallback for fields past the log-table guard: same scan order, with the
// generic counting kernel per cubic.
std::optional<EllipticCurve> trace_scan_generic(const FiniteField& F, i64 t) {
    const u64 q = F.cardinality();
    SquareTable table(F);
    for (u64 i4 = 0; i4 < q; ++i4)
        for (u64 i6 = 0; i6 < q; ++i6)
            for (u64 i2 = 0; i2 < q; ++i2) {
                EllipticCurve E;
                try {
                    E = EllipticCurve::make(F.element_at(i2),
                                            F.element_at(i4),
                                            F.element_at(i6));
                } catch (const field_error&) {
                    continue;
                }
                if (i64(q) - i64(count_affine_points(E.cubic(), table)) == t)
                    return E;
            }
    return std::nullopt;
}

std::optional<EllipticCurve> trace_scan(const FiniteField& F, i64 t) {
    const u64 q = F.cardinality();
    auto Tp = log_tables(F);
    const LogTables& T = *Tp;
    SquareTable table(F);
    const FieldElement d = F.element_at(T.gen_index);  // nonsquare
    auto verified = [&](const EllipticCurve& E) {
        return i64(q) - i64(count_affine_points(E.cubic(), table)) == t;
    };
    const u32 l2c = T.log[F.from_int(2).index()];
    const u32 l3c = T.log[F.from_int(3).index()];
    const u32 half = u32(T.q1 / 2);
    const u64 target_plus = u64(i64(q) + 1 - t);
    const u64 target_minus = u64(i64(q) + 1 + t);
    // a2 varies fastest: in characteristic 3 every a2 = 0 cubic is
    // supersingular, so a lexicographic scan would wade through a whole
    // useless slab before the first possible hit
    for (u64 i4 = 0; i4 < q; ++i4) {
        const u32 l4 = T.log[i4];
        for (u64 i6 = 0; i6 < q; ++i6) {
            const u32 l6 = T.log[i6];
            for (u64 i2 = 0; i2 < q; ++i2) {
                // cheap necessary test first: a point of the curve must die
                // under the group order the target trace dictates
                LogCurve C{T, T.log[i2], l4, l6, l2c, l3c, half};
                if (!C.kills(target_plus) && !C.kills(target_minus))
                    continue;
                u64 n = count_cubic_logspace(T, T.log[i2], l4, l6);
                i64 tr = i64(q) - i64(n);
                if (tr != t && tr != -t) continue;
                EllipticCurve E;
                try {
                    E = EllipticCurve::make(F.element_at(i2),
                                            F.element_at(i4),
                                            F.element_at(i6));
                } catch (const field_error&) {
                    continue;  // singular cubic
                }
                if (verified(E)) return E;
                // trace is -t: the quadratic twist by a nonsquare negates it
                EllipticCurve Ed;
                try {
                    Ed = EllipticCurve::make(d * E.a2(), d * d * E.a4(),
                                             d * d * d * E.a6());
                } catch (const field_error&) {
                    continue;
                }
                if (verified(Ed)) return Ed;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<EllipticCurve> find_elliptic_with_trace(const FiniteField& F,
                                                      i64 t) {
    u64 q = F.cardinality();
    if (q > kEnumerationGuard)
        throw field_error("enumeration guard exceeded");
    u64 at = t < 0 ? u64(-t) : u64(t);
    if (at > (u64(1) << 30) || at * at > 4 * q) return std::nullopt;

    // a search run asks for the same (field, trace) from many candidates
    using Key = std::tuple<u32, std::vector<u32>, i64>;
    static std::map<Key, std::optional<EllipticCurve>> cache;
    static std::mutex cache_mutex;
    Key key{F.characteristic(), F.modulus_raw(), t};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::optional<EllipticCurve> result = log_tables_feasible(F)
                                              ? trace_scan(F, t)
                                              : trace_scan_generic(F, t);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        if (cache.size() > 64) cache.clear();
        cache.emplace(key, result);
    }
    return result;
}

}  // namespace jacsplit

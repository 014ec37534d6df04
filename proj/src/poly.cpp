#include "jacsplit/poly.hpp"

#include <algorithm>

#include "jacsplit/logtable.hpp"

namespace jacsplit {

void Poly::strip() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::from_coeffs(const FiniteField& f, std::vector<FieldElement> c) {
    Poly r(f);
    for (const auto& e : c)
        if (e.field() != f) throw field_error("coefficient in wrong field");
    r.c_ = std::move(c);
    r.strip();
    return r;
}

Poly Poly::from_ints(const FiniteField& f, const std::vector<i64>& c) {
    std::vector<FieldElement> v;
    v.reserve(c.size());
    for (i64 x : c) v.push_back(f.from_int(x));
    return from_coeffs(f, std::move(v));
}

Poly Poly::x(const FiniteField& f) { return from_ints(f, {0, 1}); }

Poly Poly::constant(const FieldElement& c) {
    return from_coeffs(c.field(), {c});
}

FieldElement Poly::coeff(size_t i) const {
    if (i < c_.size()) return c_[i];
    return field_.zero();
}

FieldElement Poly::leading() const {
    if (is_zero()) throw field_error("leading coefficient of zero polynomial");
    return c_.back();
}

bool Poly::is_monic() const { return !is_zero() && c_.back().is_one(); }

Poly Poly::monic() const {
    if (is_zero()) throw field_error("monic of zero polynomial");
    if (is_monic()) return *this;
    return scaled(c_.back().inverse());
}

Poly Poly::derivative() const {
    Poly r(field_);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * field_.from_int(i64(i)));
    r.strip();
    return r;
}

FieldElement Poly::evaluate(const FieldElement& x) const {
    FieldElement r = field_.zero();
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    if (field_ != o.field_) throw field_error("mismatched coefficient fields");
    Poly r(field_);
    size_t n = std::max(c_.size(), o.c_.size());
    r.c_.reserve(n);
    for (size_t i = 0; i < n; ++i) r.c_.push_back(coeff(i) + o.coeff(i));
    r.strip();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    if (field_ != o.field_) throw field_error("mismatched coefficient fields");
    Poly r(field_);
    size_t n = std::max(c_.size(), o.c_.size());
    r.c_.reserve(n);
    for (size_t i = 0; i < n; ++i) r.c_.push_back(coeff(i) - o.coeff(i));
    r.strip();
    return r;
}

Poly Poly::operator-() const {
    Poly r(field_);
    r.c_.reserve(c_.size());
    for (const auto& e : c_) r.c_.push_back(-e);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (field_ != o.field_) throw field_error("mismatched coefficient fields");
    if (is_zero() || o.is_zero()) return Poly(field_);
    Poly r(field_);
    r.c_.assign(c_.size() + o.c_.size() - 1, field_.zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
    r.strip();
    return r;
}

Poly Poly::scaled(const FieldElement& c) const {
    Poly r(field_);
    r.c_.reserve(c_.size());
    for (const auto& e : c_) r.c_.push_back(e * c);
    r.strip();
    return r;
}

Poly Poly::shifted(size_t k) const {
    if (is_zero()) return *this;
    Poly r(field_);
    r.c_.assign(k, field_.zero());
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw field_error("polynomial division by zero");
    if (field_ != d.field_) throw field_error("mismatched coefficient fields");
    Poly q(field_), rem = *this;
    if (rem.degree() < d.degree()) return {q, rem};
    q.c_.assign(size_t(rem.degree() - d.degree()) + 1, field_.zero());
    FieldElement ilc = d.leading().inverse();
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        size_t shift = size_t(rem.degree() - d.degree());
        FieldElement c = rem.leading() * ilc;
        q.c_[shift] = c;
        for (size_t i = 0; i < d.c_.size(); ++i)
            rem.c_[shift + i] = rem.c_[shift + i] - c * d.c_[i];
        rem.strip();
    }
    q.strip();
    return {q, rem};
}

bool Poly::operator==(const Poly& o) const {
    return field_ == o.field_ && c_ == o.c_;
}

bool Poly::canonical_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] != b.c_[i]) return FieldElement::lex_less(a.c_[i], b.c_[i]);
    }
    return false;
}

Poly poly_gcd(const Poly& f, const Poly& g) {
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

Poly poly_pow_mod(const Poly& base, u64 e, const Poly& mod) {
    Poly r = Poly::from_ints(mod.field(), {1});
    Poly b = base % mod;
    while (e) {
        if (e & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        e >>= 1;
    }
    return r;
}

Poly poly_compose_mod(const Poly& f, const Poly& g, const Poly& m) {
    Poly r(m.field());
    for (size_t i = f.coeffs().size(); i-- > 0;)
        r = (r * g + Poly::constant(f.coeffs()[i])) % m;
    return r;
}

Poly poly_pow(const Poly& base, u32 e) {
    Poly r = Poly::from_ints(base.field(), {1});
    Poly b = base;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

namespace {

// x^{Q^k} mod f for k = 1..kmax, via iterated composition with x^Q mod f.
std::vector<Poly> frobenius_powers(const Poly& f, u32 kmax) {
    const FiniteField& F = f.field();
    u64 Q = F.cardinality();
    std::vector<Poly> frob(kmax + 1);
    frob[0] = Poly::x(F) % f;
    if (kmax >= 1) frob[1] = poly_pow_mod(Poly::x(F), Q, f);
    for (u32 k = 2; k <= kmax; ++k)
        frob[k] = poly_compose_mod(frob[k - 1], frob[1], f);
    return frob;
}

u64 fnv1a_step(u64 h, u64 v) {
    h ^= v;
    return h * 0x100000001b3ULL;
}

u64 hash_poly(const Poly& f) {
    u64 h = 0xcbf29ce484222325ULL;
    const FiniteField& F = f.field();
    h = fnv1a_step(h, F.characteristic());
    h = fnv1a_step(h, F.degree());
    for (u32 c : F.modulus_raw()) h = fnv1a_step(h, c);
    for (const auto& e : f.coeffs())
        for (u32 c : e.coords()) h = fnv1a_step(h, c + 1);
    return h;
}

struct SplitMix {
    u64 s;
    u64 next() {
        u64 z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

Poly random_poly(const FiniteField& F, u32 deg_bound, SplitMix& rng) {
    std::vector<FieldElement> c;
    u64 q = F.cardinality();
    for (u32 i = 0; i < deg_bound; ++i)
        c.push_back(F.element_at(rng.next() % q));
    return Poly::from_coeffs(F, std::move(c));
}

// a^{1/p} in F_{p^d} is a^{p^{d-1}}.
FieldElement pth_root(const FieldElement& a) {
    return a.frobenius(a.field().degree() - 1);
}

// For f = h(x^p), return h with p-th roots of the surviving coefficients.
Poly pth_root_poly(const Poly& f) {
    const FiniteField& F = f.field();
    u32 p = F.characteristic();
    std::vector<FieldElement> c;
    for (size_t i = 0; i * p <= size_t(f.degree()); ++i)
        c.push_back(pth_root(f.coeff(i * p)));
    return Poly::from_coeffs(F, std::move(c));
}

// Squarefree decomposition of monic f: pairs (g_i, m_i), g_i squarefree,
// pairwise coprime, f = prod g_i^{m_i}. Char-p Yun with p-th-power recursion.
void squarefree_decompose(const Poly& f, int outer_mult,
                          std::vector<std::pair<Poly, int>>& out) {
    if (f.degree() < 1) return;
    u32 p = f.field().characteristic();
    Poly fd = f.derivative();
    if (fd.is_zero()) {
        squarefree_decompose(pth_root_poly(f).monic(), outer_mult * int(p),
                             out);
        return;
    }
    Poly c = poly_gcd(f, fd);
    Poly w = f / c;
    int i = 1;
    while (w.degree() >= 1) {
        Poly y = poly_gcd(w, c);
        Poly z = w / y;
        if (z.degree() >= 1) out.emplace_back(z.monic(), outer_mult * i);
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() >= 1)
        squarefree_decompose(pth_root_poly(c).monic(), outer_mult * int(p),
                             out);
}

// Equal-degree splitting of monic squarefree f all of whose irreducible
// factors have degree d. Cantor-Zassenhaus with a norm map so exponents
// stay below 2^63; rng is the deterministic stream.
void equal_degree_split_with(const Poly& f, u32 d, SplitMix& rng,
                             const Poly& xq_in, std::vector<Poly>& out) {
    if (f.degree() == int(d)) {
        out.push_back(f.monic());
        return;
    }
    const FiniteField& F = f.field();
    u64 Q = F.cardinality();
    Poly one = Poly::from_ints(F, {1});
    Poly xq = xq_in % f;  // x^Q mod f, inherited from the caller
    for (;;) {
        Poly r = random_poly(F, u32(f.degree()), rng);
        if (r.degree() < 1) continue;
        // norm of r into F_Q relative to degree d: prod_{i<d} r^{Q^i} mod f
        Poly n = r % f;
        Poly s = n;
        for (u32 i = 1; i < d; ++i) {
            s = poly_compose_mod(s, xq, f);
            n = (n * s) % f;
        }
        Poly w = poly_pow_mod(n, (Q - 1) / 2, f);
        Poly g = poly_gcd(w - one, f);
        if (g.degree() >= 1 && g.degree() < f.degree()) {
            equal_degree_split_with(g, d, rng, xq, out);
            equal_degree_split_with(f / g, d, rng, xq, out);
            return;
        }
    }
}

void equal_degree_split(const Poly& f, u32 d, SplitMix& rng,
                        std::vector<Poly>& out) {
    Poly xq = poly_pow_mod(Poly::x(f.field()), f.field().cardinality(), f);
    equal_degree_split_with(f, d, rng, xq, out);
}

// Distinct-degree then equal-degree factorization of monic squarefree f.
// Degrees above max_degree are not split off: the remaining cofactor is
// returned as one (possibly composite) piece, which callers interested only
// in small factors discard.
std::vector<Poly> factor_squarefree(const Poly& f, SplitMix& rng,
                                    u32 max_degree = u32(-1)) {
    std::vector<Poly> out;
    const FiniteField& F = f.field();
    u64 Q = F.cardinality();
    Poly fstar = f.monic();
    if (fstar.degree() < 1) return out;
    if (fstar.degree() == 1) {
        out.push_back(fstar);
        return out;
    }
    Poly xpoly = Poly::x(F);
    Poly xq = poly_pow_mod(xpoly, Q, fstar);
    Poly h = xq;  // x^{Q^d} mod fstar for the current d
    u32 d = 1;
    while (int(2 * d) <= fstar.degree() && d <= max_degree) {
        Poly g = poly_gcd(h - (xpoly % fstar), fstar);
        if (g.degree() >= 1) {
            equal_degree_split_with(g, d, rng, xq, out);
            fstar = fstar / g;
            if (fstar.degree() < 1) return out;
            h = h % fstar;
            xq = xq % fstar;
        }
        ++d;
        if (int(2 * d) > fstar.degree() || d > max_degree) break;
        h = poly_compose_mod(h, xq, fstar);
    }
    if (fstar.degree() >= 1) out.push_back(fstar.monic());
    return out;
}

}  // namespace

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    const FiniteField& F = f.field();
    u32 d = u32(f.degree());
    Poly fm = f.monic();
    auto frob = frobenius_powers(fm, d);
    Poly xpoly = Poly::x(F) % fm;
    if (!(frob[d] - xpoly).is_zero()) return false;
    std::vector<u32> prime_divs;
    u32 n = d;
    for (u32 q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            prime_divs.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) prime_divs.push_back(n);
    for (u32 r : prime_divs)
        if (poly_gcd(frob[d / r] - xpoly, fm).degree() != 0) return false;
    return true;
}

std::vector<std::pair<Poly, int>> factor(const Poly& f) {
    if (f.is_zero() || f.degree() < 1)
        throw field_error("factor: need a nonzero polynomial of degree >= 1");
    SplitMix rng{hash_poly(f)};
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_decompose(f.monic(), 1, sqf);
    std::vector<std::pair<Poly, int>> out;
    for (const auto& [g, m] : sqf)
        for (const Poly& irr : factor_squarefree(g, rng))
            out.emplace_back(irr, m);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return Poly::canonical_less(a.first, b.first);
    });
    return out;
}

std::vector<std::pair<Poly, int>> factor_up_to(const Poly& f,
                                               u32 max_degree) {
    if (f.is_zero() || f.degree() < 1)
        throw field_error("factor: need a nonzero polynomial of degree >= 1");
    SplitMix rng{hash_poly(f)};
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_decompose(f.monic(), 1, sqf);
    std::vector<std::pair<Poly, int>> out;
    for (const auto& [g, m] : sqf)
        for (const Poly& irr : factor_squarefree(g, rng, max_degree))
            if (irr.degree() <= int(max_degree)) out.emplace_back(irr, m);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return Poly::canonical_less(a.first, b.first);
    });
    return out;
}

Poly squarefree_part(const Poly& f) {
    if (f.is_zero()) throw field_error("squarefree_part of zero");
    if (f.degree() == 0) return f.monic();
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_decompose(f.monic(), 1, sqf);
    Poly r = Poly::from_ints(f.field(), {1});
    for (const auto& [g, m] : sqf) r = r * g;
    return r.monic();
}

Poly odd_multiplicity_part(const Poly& f) {
    if (f.is_zero()) throw field_error("odd_multiplicity_part of zero");
    if (f.degree() == 0) return f.monic();
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_decompose(f.monic(), 1, sqf);
    Poly r = Poly::from_ints(f.field(), {1});
    for (const auto& [g, m] : sqf)
        if (m % 2 == 1) r = r * g;
    return r.monic();
}

std::vector<FieldElement> poly_roots(const Poly& f) {
    std::vector<FieldElement> out;
    if (f.degree() < 1) return out;
    const FiniteField& F = f.field();
    // small fields: a direct log-space scan beats factoring
    if (F.cardinality() <= (u64(1) << 16) && log_tables_feasible(F)) {
        auto Tp = log_tables(F);
        const LogTables& T = *Tp;
        const auto& c = f.coeffs();
        const int d = f.degree();
        std::vector<u32> lc(c.size());
        for (size_t i = 0; i < c.size(); ++i) lc[i] = T.log[c[i].index()];
        auto value = [&](bool at_zero, u32 k) {
            if (at_zero) return lc[0];
            u32 v = lc[size_t(d)];
            for (int i = d - 1; i >= 0; --i) {
                if (v != T.zero) {
                    u64 s = v + u64(k);
                    if (s >= T.q1) s -= T.q1;
                    v = u32(s);
                }
                v = T.add(v, lc[size_t(i)]);
            }
            return v;
        };
        if (value(true, 0) == T.zero) out.push_back(F.zero());
        for (u64 k = 0; k < T.q1; ++k)
            if (value(false, u32(k)) == T.zero)
                out.push_back(F.element_at(T.exp[k]));
        std::sort(out.begin(), out.end(), FieldElement::lex_less);
        return out;
    }
    for (const auto& [g, m] : factor(f))
        if (g.degree() == 1) out.push_back(-g.coeff(0));
    std::sort(out.begin(), out.end(), FieldElement::lex_less);
    return out;
}

RationalFunction RationalFunction::make(const Poly& n, const Poly& d) {
    if (d.is_zero()) throw field_error("rational function with zero denominator");
    Poly g = poly_gcd(n, d);
    Poly nn = n, dd = d;
    if (g.degree() >= 1) {
        nn = n / g;
        dd = d / g;
    }
    FieldElement lc = dd.leading();
    if (!lc.is_one()) {
        FieldElement ilc = lc.inverse();
        nn = nn.scaled(ilc);
        dd = dd.scaled(ilc);
    }
    return RationalFunction{nn, dd};
}

bool RationalFunction::evaluate(const FieldElement& x, FieldElement& out) const {
    FieldElement d = den.evaluate(x);
    if (d.is_zero()) return false;
    out = num.evaluate(x) / d;
    return true;
}

}  // namespace jacsplit

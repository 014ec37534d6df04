#include "jacsplit/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace jacsplit {

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Raw polynomial arithmetic over F_p on little-endian u32 vectors; used for
// modulus search and element arithmetic before a FiniteField exists.
using Vec = std::vector<u32>;

void trim(Vec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

u32 addm(u32 a, u32 b, u32 p) {
    u64 s = u64(a) + b;
    return u32(s >= p ? s - p : s);
}
u32 subm(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }
u32 mulm(u32 a, u32 b, u32 p) { return u32((u64(a) * b) % p); }

u32 inv_mod(u32 a, u32 p) {
    // extended Euclid
    i64 t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        i64 q = r / newr;
        std::swap(t, newt);
        newt -= q * t;
        std::swap(r, newr);
        newr -= q * r;
    }
    if (r != 1) throw field_error("inv_mod: not invertible");
    if (t < 0) t += p;
    return u32(t);
}

Vec vmul(const Vec& a, const Vec& b, u32 p) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = u32((u64(a[i]) * b[j] + r[i + j]) % p);
    }
    trim(r);
    return r;
}

// remainder of a modulo monic m
Vec vmod(Vec a, const Vec& m, u32 p) {
    trim(a);
    size_t dm = m.size() - 1;
    while (a.size() > dm) {
        u32 c = a.back();
        size_t shift = a.size() - 1 - dm;
        if (c != 0)
            for (size_t i = 0; i <= dm; ++i)
                a[shift + i] = subm(a[shift + i], mulm(c, m[i], p), p);
        a.pop_back();
        trim(a);
        if (a.size() <= dm) break;
    }
    return a;
}

Vec vmulmod(const Vec& a, const Vec& b, const Vec& m, u32 p) {
    return vmod(vmul(a, b, p), m, p);
}

Vec vadd(const Vec& a, const Vec& b, u32 p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u32 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = addm(x, y, p);
    }
    trim(r);
    return r;
}

Vec vsub(const Vec& a, const Vec& b, u32 p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u32 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = subm(x, y, p);
    }
    trim(r);
    return r;
}

Vec vgcd(Vec a, Vec b, u32 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // reduce a mod b (b made monic on the fly)
        u32 lc = b.back();
        if (lc != 1) {
            u32 ilc = inv_mod(lc, p);
            for (auto& c : b) c = mulm(c, ilc, p);
        }
        a = vmod(std::move(a), b, p);
        std::swap(a, b);
    }
    if (!a.empty() && a.back() != 1) {
        u32 ilc = inv_mod(a.back(), p);
        for (auto& c : a) c = mulm(c, ilc, p);
    }
    return a;
}

Vec vpowmod(Vec base, u64 e, const Vec& m, u32 p) {
    Vec r{1};
    base = vmod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = vmulmod(r, base, m, p);
        base = vmulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

// f(g) mod m by Horner
Vec vcompose_mod(const Vec& f, const Vec& g, const Vec& m, u32 p) {
    Vec r;
    for (size_t i = f.size(); i-- > 0;) {
        r = vmulmod(r, g, m, p);
        if (f[i] != 0) r = vadd(r, Vec{f[i]}, p);
    }
    return r;
}

// Rabin irreducibility test over F_p, monic f of degree d >= 1.
bool vis_irreducible(const Vec& f, u32 p) {
    size_t d = f.size() - 1;
    if (d == 0) return false;
    if (d == 1) return true;
    Vec x{0, 1};
    Vec xp = vpowmod(x, p, f, p);  // x^p mod f
    // x^{p^k} via iterated composition
    std::vector<size_t> prime_divs;
    {
        size_t n = d;
        for (size_t q = 2; q * q <= n; ++q)
            if (n % q == 0) {
                prime_divs.push_back(q);
                while (n % q == 0) n /= q;
            }
        if (n > 1) prime_divs.push_back(n);
    }
    // frob[k] = x^{p^k} mod f, built incrementally
    Vec cur = x;
    std::vector<Vec> frob(d + 1);
    frob[0] = x;
    for (size_t k = 1; k <= d; ++k) {
        cur = vcompose_mod(cur, xp, f, p);
        frob[k] = cur;
    }
    if (vsub(frob[d], x, p) != Vec{}) return false;
    for (size_t q : prime_divs) {
        Vec g = vgcd(vsub(frob[d / q], x, p), f, p);
        if (!(g.size() == 1 && g[0] == 1)) return false;
    }
    return true;
}

}  // namespace

FiniteField FiniteField::make(u32 p, u32 degree) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
        throw field_error("characteristic must be an odd prime");
    if (degree < 1) throw field_error("degree must be positive");
    if (degree * std::log2(double(p)) >= 63.0)
        throw field_error("field too large: p^degree must fit in 63 bits");
    // the canonical modulus search is deterministic, so cache it; callers
    // construct the same tower fields over and over during a search
    static std::map<std::pair<u32, u32>, std::shared_ptr<detail::FieldRep>>
        cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({p, degree});
        if (it != cache.end()) {
            FiniteField f;
            f.rep_ = it->second;
            return f;
        }
    }
    auto rep = std::make_shared<detail::FieldRep>();
    rep->p = p;
    rep->degree = degree;
    if (degree == 1) {
        rep->modulus = {0, 1};
        FiniteField f;
        f.rep_ = std::move(rep);
        return f;
    }
    // lexicographically smallest (c_{d-1}, ..., c_1, c_0) with x^d + ...
    // irreducible; the constant term varies fastest
    Vec mod(degree + 1, 0);
    mod[degree] = 1;
    std::vector<u32> tup(degree, 0);
    for (;;) {
        for (u32 i = 0; i < degree; ++i) mod[i] = tup[i];
        if (vis_irreducible(mod, p)) break;
        u32 i = 0;
        while (i < degree && tup[i] == p - 1) tup[i++] = 0;
        if (i == degree) throw field_error("no irreducible modulus found");
        ++tup[i];
    }
    rep->modulus = mod;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(std::pair<u32, u32>{p, degree}, rep);
    }
    FiniteField f;
    f.rep_ = std::move(rep);
    return f;
}

FiniteField FiniteField::with_modulus(u32 p, const std::vector<u32>& modulus) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
        throw field_error("characteristic must be an odd prime");
    if (modulus.empty() || modulus.size() == 1) {
        // prime field
        FiniteField f = make(p, 1);
        return f;
    }
    Vec m = modulus;
    trim(m);
    if (m.size() < 2 || m.back() != 1)
        throw field_error("modulus must be monic of degree >= 1");
    for (u32 c : m)
        if (c >= p) throw field_error("modulus coefficient out of range");
    u32 degree = u32(m.size() - 1);
    if (degree == 1) return make(p, 1);
    if (degree * std::log2(double(p)) >= 63.0)
        throw field_error("field too large: p^degree must fit in 63 bits");
    if (!vis_irreducible(m, p)) throw field_error("modulus is reducible");
    auto rep = std::make_shared<detail::FieldRep>();
    rep->p = p;
    rep->degree = degree;
    rep->modulus = std::move(m);
    FiniteField f;
    f.rep_ = std::move(rep);
    return f;
}

u64 FiniteField::cardinality() const {
    u64 q = 1;
    for (u32 i = 0; i < rep_->degree; ++i) q *= rep_->p;
    return q;
}

std::vector<u32> FiniteField::modulus_coeffs() const {
    if (rep_->degree == 1) return {};
    return rep_->modulus;
}

bool FiniteField::operator==(const FiniteField& o) const {
    if (rep_ == o.rep_) return true;
    if (!rep_ || !o.rep_) return false;
    return rep_->p == o.rep_->p && rep_->degree == o.rep_->degree &&
           rep_->modulus == o.rep_->modulus;
}

FieldElement FiniteField::zero() const {
    return FieldElement(*this, std::vector<u32>(rep_->degree, 0));
}

FieldElement FiniteField::one() const { return from_int(1); }

FieldElement FiniteField::from_int(i64 v) const {
    i64 p = rep_->p;
    i64 r = v % p;
    if (r < 0) r += p;
    std::vector<u32> c(rep_->degree, 0);
    c[0] = u32(r);
    return FieldElement(*this, std::move(c));
}

FieldElement FiniteField::from_coords(std::vector<u32> coords) const {
    if (coords.size() != rep_->degree)
        throw field_error("coordinate vector has wrong length");
    for (u32 v : coords)
        if (v >= rep_->p) throw field_error("coordinate out of range");
    return FieldElement(*this, std::move(coords));
}

FieldElement FiniteField::element_at(u64 index) const {
    std::vector<u32> c(rep_->degree, 0);
    for (u32 i = 0; i < rep_->degree; ++i) {
        c[i] = u32(index % rep_->p);
        index /= rep_->p;
    }
    if (index != 0) throw field_error("element index out of range");
    return FieldElement(*this, std::move(c));
}

FieldElement FiniteField::generator() const {
    if (rep_->degree == 1) return one();
    std::vector<u32> c(rep_->degree, 0);
    c[1] = 1;
    return FieldElement(*this, std::move(c));
}

bool FieldElement::is_zero() const {
    for (u32 v : c_)
        if (v) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

u64 FieldElement::index() const {
    u64 idx = 0;
    u32 p = field_.characteristic();
    for (size_t i = c_.size(); i-- > 0;) idx = idx * p + c_[i];
    return idx;
}

bool FieldElement::in_prime_field() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

u32 FieldElement::prime_value() const {
    if (!in_prime_field()) throw field_error("element not in prime subfield");
    return c_[0];
}

static void check_same(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field())
        throw field_error("mismatched parent fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(*this, o);
    u32 p = field_.characteristic();
    std::vector<u32> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = addm(c_[i], o.c_[i], p);
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(*this, o);
    u32 p = field_.characteristic();
    std::vector<u32> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = subm(c_[i], o.c_[i], p);
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-() const {
    u32 p = field_.characteristic();
    std::vector<u32> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] ? p - c_[i] : 0;
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(*this, o);
    u32 p = field_.characteristic();
    Vec prod = vmul(c_, o.c_, p);
    Vec red = vmod(std::move(prod), field_.rep_->modulus, p);
    red.resize(field_.degree(), 0);
    return FieldElement(field_, std::move(red));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw field_error("division by zero");
    u32 p = field_.characteristic();
    const Vec& m = field_.rep_->modulus;
    // extended Euclid over F_p[x]
    Vec r0 = m, r1 = c_;
    trim(r1);
    Vec t0{}, t1{1};
    while (!r1.empty()) {
        // divide r0 by r1
        Vec q;
        Vec rem = r0;
        trim(rem);
        u32 lc = r1.back();
        u32 ilc = inv_mod(lc, p);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, 0);
            while (rem.size() >= r1.size() && !rem.empty()) {
                u32 c = mulm(rem.back(), ilc, p);
                size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (size_t i = 0; i < r1.size(); ++i)
                    rem[shift + i] = subm(rem[shift + i], mulm(c, r1[i], p), p);
                trim(rem);
            }
        }
        trim(q);
        Vec t2 = vsub(t0, vmul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 is the gcd (a nonzero constant since modulus is irreducible)
    if (r0.size() != 1) throw field_error("inverse: gcd not constant");
    u32 ig = inv_mod(r0[0], p);
    for (auto& v : t0) v = mulm(v, ig, p);
    t0.resize(field_.degree(), 0);
    return FieldElement(field_, std::move(t0));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    check_same(*this, o);
    return *this * o.inverse();
}

FieldElement FieldElement::pow(u64 e) const {
    FieldElement r = field_.one();
    FieldElement b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::frobenius(u32 k) const {
    FieldElement r = *this;
    for (u32 i = 0; i < k; ++i) r = r.pow(field_.characteristic());
    return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_ == o.field_ && c_ == o.c_;
}

bool FieldElement::lex_less(const FieldElement& a, const FieldElement& b) {
    return a.c_ < b.c_;
}

int quadratic_character(const FieldElement& a) {
    if (a.is_zero()) return 0;
    u64 q = a.field().cardinality();
    FieldElement r = a.pow((q - 1) / 2);
    return r.is_one() ? 1 : -1;
}

bool try_sqrt(const FieldElement& a, FieldElement& out) {
    const FiniteField& F = a.field();
    if (a.is_zero()) {
        out = F.zero();
        return true;
    }
    if (quadratic_character(a) != 1) return false;
    u64 q = F.cardinality();
    FieldElement s;
    if (q % 4 == 3) {
        s = a.pow((q + 1) / 4);
    } else {
        // Tonelli-Shanks; deterministic nonresidue scan in element order
        u64 m = q - 1;
        u32 e = 0;
        while (m % 2 == 0) {
            m /= 2;
            ++e;
        }
        FieldElement n;
        for (u64 i = 1;; ++i) {
            n = F.element_at(i);
            if (quadratic_character(n) == -1) break;
        }
        FieldElement z = n.pow(m);
        FieldElement x = a.pow((m + 1) / 2);
        FieldElement b = a.pow(m);
        u32 r = e;
        while (!b.is_one()) {
            FieldElement t = b;
            u32 k = 0;
            while (!t.is_one()) {
                t = t * t;
                ++k;
            }
            FieldElement c = z;
            for (u32 i = 0; i + k + 1 < r; ++i) c = c * c;
            x = x * c;
            z = c * c;
            b = b * z;
            r = k;
        }
        s = x;
    }
    FieldElement ns = -s;
    out = FieldElement::lex_less(s, ns) ? s : ns;
    return true;
}

}  // namespace jacsplit

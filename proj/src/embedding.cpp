#include "jacsplit/embedding.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace jacsplit {

Embedding Embedding::make(const FiniteField& source, const FiniteField& target) {
    if (source.characteristic() != target.characteristic())
        throw field_error("embedding: different characteristics");
    if (target.degree() % source.degree() != 0)
        throw field_error("embedding: source degree must divide target degree");
    Embedding e;
    e.source_ = source;
    e.target_ = target;
    if (source.degree() == 1) {
        e.gen_image_ = target.one();
        return e;
    }
    // the canonical root is deterministic in the two moduli, and the root
    // search dominates tower construction during a search loop: cache it
    using Key = std::tuple<u32, std::vector<u32>, std::vector<u32>>;
    static std::map<Key, Embedding> cache;
    static std::mutex cache_mutex;
    Key key{source.characteristic(), source.modulus_raw(),
            target.modulus_raw()};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::vector<i64> mod_ints;
    for (u32 c : source.modulus_raw()) mod_ints.push_back(i64(c));
    Poly mod_in_target = Poly::from_ints(target, mod_ints);
    std::vector<FieldElement> roots = poly_roots(mod_in_target);
    if (roots.empty())
        throw field_error("embedding: modulus has no root in target");
    e.gen_image_ = roots.front();  // sorted lex, smallest first
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(key, e);
    }
    return e;
}

FieldElement Embedding::map(const FieldElement& a) const {
    if (a.field() != source_) throw field_error("embedding: wrong source field");
    FieldElement r = target_.zero();
    const auto& c = a.coords();
    for (size_t i = c.size(); i-- > 0;)
        r = r * gen_image_ + target_.from_int(i64(c[i]));
    return r;
}

Poly Embedding::map(const Poly& f) const {
    std::vector<FieldElement> c;
    c.reserve(f.coeffs().size());
    for (const auto& e : f.coeffs()) c.push_back(map(e));
    return Poly::from_coeffs(target_, std::move(c));
}

bool Embedding::unmap(const FieldElement& a, FieldElement& out) const {
    if (a.field() != target_) throw field_error("embedding: wrong target field");
    // Solve c_0 + c_1 g + ... + c_{m-1} g^{m-1} = a over F_p by elimination.
    u32 p = source_.characteristic();
    u32 m = source_.degree(), n = target_.degree();
    // columns: coords of g^j; last column: coords of a
    std::vector<std::vector<u32>> A(n, std::vector<u32>(m + 1, 0));
    FieldElement pw = target_.one();
    for (u32 j = 0; j < m; ++j) {
        for (u32 i = 0; i < n; ++i) A[i][j] = pw.coords()[i];
        pw = pw * gen_image_;
    }
    for (u32 i = 0; i < n; ++i) A[i][m] = a.coords()[i];
    std::vector<i64> pivot_col(m, -1);
    u32 row = 0;
    for (u32 col = 0; col < m && row < n; ++col) {
        u32 sel = row;
        while (sel < n && A[sel][col] == 0) ++sel;
        if (sel == n) continue;
        std::swap(A[sel], A[row]);
        u64 inv = 1;
        {  // inverse of pivot mod p
            u64 b = A[row][col], e = p - 2, r = 1;
            while (e) {
                if (e & 1) r = r * b % p;
                b = b * b % p;
                e >>= 1;
            }
            inv = r;
        }
        for (u32 j = col; j <= m; ++j) A[row][j] = u32(A[row][j] * inv % p);
        for (u32 i = 0; i < n; ++i) {
            if (i == row || A[i][col] == 0) continue;
            u64 fct = A[i][col];
            for (u32 j = col; j <= m; ++j)
                A[i][j] = u32((A[i][j] + u64(p - 1) * fct % p * A[row][j]) % p);
        }
        pivot_col[col] = row;
        ++row;
    }
    std::vector<u32> c(m, 0);
    for (u32 col = 0; col < m; ++col)
        if (pivot_col[col] >= 0) c[col] = A[size_t(pivot_col[col])][m];
    // consistency: rows without pivots must have zero rhs
    for (u32 i = row; i < n; ++i)
        if (A[i][m] != 0) return false;
    FieldElement cand = source_.from_coords(std::move(c));
    if (map(cand) != a) return false;
    out = cand;
    return true;
}

}  // namespace jacsplit

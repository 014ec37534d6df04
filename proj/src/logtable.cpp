#include "jacsplit/logtable.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace jacsplit {

namespace {

std::shared_ptr<const LogTables> build_log_tables(const FiniteField& F) {
    const u64 q = F.cardinality();
    std::vector<u64> prime_factors;
    u64 n = q - 1;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            prime_factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) prime_factors.push_back(n);

    FieldElement g = F.one();
    for (u64 i = 2; i < q; ++i) {
        FieldElement c = F.element_at(i);
        bool primitive = true;
        for (u64 d : prime_factors)
            if (c.pow((q - 1) / d) == F.one()) {
                primitive = false;
                break;
            }
        if (primitive) {
            g = c;
            break;
        }
    }

    auto T = std::make_shared<LogTables>();
    T->q1 = q - 1;
    T->zero = u32(q - 1);
    T->gen_index = u32(g.index());
    T->exp.resize(q - 1);
    T->log.assign(q, T->zero);
    T->zech.assign(q - 1, T->zero);
    FieldElement pw = F.one();
    for (u64 k = 0; k < q - 1; ++k) {
        T->exp[k] = u32(pw.index());
        T->log[T->exp[k]] = u32(k);
        pw = pw * g;
    }
    const FieldElement one = F.one();
    pw = F.one();
    for (u64 k = 0; k < q - 1; ++k) {
        FieldElement s = one + pw;
        if (!s.is_zero()) T->zech[k] = T->log[s.index()];
        pw = pw * g;
    }
    return T;
}

}  // namespace

bool log_tables_feasible(const FiniteField& F) {
    return F.cardinality() <= kLogTableGuard;
}

std::shared_ptr<const LogTables> log_tables(const FiniteField& F) {
    if (!log_tables_feasible(F))
        throw field_error("log tables: field exceeds the size guard");
    using Key = std::pair<u32, std::vector<u32>>;
    static std::map<Key, std::shared_ptr<const LogTables>> cache;
    static std::mutex cache_mutex;
    Key key{F.characteristic(), F.modulus_raw()};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::shared_ptr<const LogTables> T = build_log_tables(F);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        if (cache.size() > 8) cache.clear();  // bound resident table memory
        cache.emplace(key, T);
    }
    return T;
}

}  // namespace jacsplit

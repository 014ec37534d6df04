#pragma once

#include "jacsplit/certificate.hpp"

namespace jacsplit {

struct SearchConfig {
    u32 p = 3;
    u32 ell = 5;
    u32 max_base_degree = 4;
    bool paper_faithful = false;
    u64 seed = 0;
    u64 max_candidates = u64(1) << 40;
    u32 max_certificates = 1;
    u32 jobs = 0;  // 0 = library default thread count
};

/// Outcome of one search run. When no certificate was found, `advice`
/// carries the diagnostic and the rejection counters explain where the
/// candidates died; counters plus accepted certificates partition the
/// examined candidates.
struct SearchResult {
    std::vector<Certificate> certificates;
    u64 examined = 0;
    std::map<std::string, u64> rejections;
    std::string advice;
};

/// The search loop: per base degree a <= max_base_degree over q = p^a, fix
/// the lexicographically first ordinary curve with full rational 2-torsion
/// as E_prime, enumerate candidate domain curves in lexicographic
/// coefficient order, and push each through kernel enumeration, the
/// inertness filter, frame construction for all 6 pairings, the model
/// builders, the spectral checks, and twist assembly. Deterministic for a
/// fixed config.
SearchResult search(const SearchConfig& cfg);

/// One-shot run of the full per-candidate construction on an explicit domain
/// curve. E_prime defaults to the same choice search() makes over the
/// curve's field; when kernel_filter is non-null only kernels with that
/// exact polynomial are tried. On failure returns nothing and, when
/// fail_reason is non-null, stores the name of the deepest stage reached
/// (the same keys as SearchResult::rejections).
std::optional<Certificate> construct_certificate(
    const EllipticCurve& E_tilde, u32 ell,
    const EllipticCurve* E_prime = nullptr,
    const Poly* kernel_filter = nullptr, bool paper_faithful = false,
    u64 seed = 0, std::string* fail_reason = nullptr);

/// All field elements in lexicographic coordinate order (the enumeration
/// order the pipeline promises).
std::vector<FieldElement> lex_elements(const FiniteField& F);

/// Full rational 4-torsion test (all 16 points of order dividing 4).
bool four_torsion_rational(const EllipticCurve& E);

}  // namespace jacsplit

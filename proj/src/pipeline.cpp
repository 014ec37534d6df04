#include "jacsplit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jacsplit {

std::vector<FieldElement> lex_elements(const FiniteField& F) {
    std::vector<FieldElement> out;
    out.reserve(F.cardinality());
    for (u64 i = 0; i < F.cardinality(); ++i) out.push_back(F.element_at(i));
    std::sort(out.begin(), out.end(), FieldElement::lex_less);
    return out;
}

bool four_torsion_rational(const EllipticCurve& E) {
    const FiniteField& F = E.field();
    u64 found = 1;  // infinity
    for (u64 i = 0; i < F.cardinality(); ++i) {
        FieldElement x = F.element_at(i), y;
        if (!try_sqrt(E.cubic().evaluate(x), y)) continue;
        CurvePoint P = CurvePoint::affine(x, y);
        if (E.scalar_mul(4, P).infinity) found += y.is_zero() ? 1 : 2;
    }
    return found == 16;
}

namespace {

// Rejection stages, deepest-reached wins; names double as counter keys.
enum Stage {
    kSingular,
    kNoFullTwoTorsion,
    kNotOrdinary,
    kPaperFaithfulFiltered,
    kNoInertEigenvalue,
    kNoRationalKernel,
    kNoInertKernel,
    kFrameFailed,
    kModelDefect,
    kCountInconsistent,
    kInertShapeFailed,
    kNotPowerOfElliptic,
    kQuadraticNotOrdinary,
    kDescentFailed,
    kAccepted,
};

const char* stage_name(Stage s) {
    switch (s) {
        case kSingular: return "singular";
        case kNoFullTwoTorsion: return "no_full_two_torsion";
        case kNotOrdinary: return "not_ordinary";
        case kPaperFaithfulFiltered: return "paper_faithful_filtered";
        case kNoInertEigenvalue: return "no_inert_eigenvalue";
        case kNoRationalKernel: return "no_rational_kernel";
        case kNoInertKernel: return "no_inert_kernel";
        case kFrameFailed: return "frame_failed";
        case kModelDefect: return "model_defect";
        case kCountInconsistent: return "count_inconsistent";
        case kInertShapeFailed: return "inert_shape_failed";
        case kNotPowerOfElliptic: return "not_power_of_elliptic";
        case kQuadraticNotOrdinary: return "quadratic_not_ordinary";
        case kDescentFailed: return "descent_failed";
        case kAccepted: return "accepted";
    }
    return "?";
}

u32 order_mod(u32 a, u32 m) {
    u32 x = a % m, ord = 1;
    if (x == 0) return 0;
    while (x != 1) {
        x = u32(u64(x) * a % m);
        ++ord;
    }
    return ord;
}

// Does Frobenius have an eigenvalue of full order mod ell? Cheap filter
// from the characteristic polynomial x^2 - tx + q alone.
bool has_primitive_eigenvalue(i64 t, u64 q, u32 ell) {
    for (u32 r = 1; r < ell; ++r) {
        i64 v = (i64(r) * r - t * i64(r) + i64(q % ell)) % i64(ell);
        if ((v % i64(ell) + i64(ell)) % i64(ell) != 0) continue;
        if (order_mod(r, ell) == ell - 1) return true;
    }
    return false;
}

constexpr std::array<std::array<int, 3>, 6> kPairings{{{0, 1, 2},
                                                       {0, 2, 1},
                                                       {1, 0, 2},
                                                       {1, 2, 0},
                                                       {2, 0, 1},
                                                       {2, 1, 0}}};

std::optional<EllipticCurve> pick_E_prime(
    const FiniteField& F, const std::vector<FieldElement>& elems,
    bool paper_faithful) {
    for (const FieldElement& a2 : elems)
        for (const FieldElement& a4 : elems)
            for (const FieldElement& a6 : elems) {
                EllipticCurve E;
                try {
                    E = EllipticCurve::make(a2, a4, a6);
                } catch (const field_error&) {
                    continue;
                }
                if (!E.full_two_torsion().has_value()) continue;
                if (!E.trace_and_ordinary().second) continue;
                if (paper_faithful && !four_torsion_rational(E)) continue;
                return E;
            }
    return std::nullopt;
}

// The staged per-candidate run shared by search() and
// construct_certificate(); returns the deepest stage reached, kAccepted
// iff `cert` was filled in.
Stage run_candidate(const EllipticCurve& Et, const EllipticCurve& Eprime,
                    u32 ell, const Poly* kernel_filter, bool paper_faithful,
                    u64 seed, Certificate& cert) {
    const FiniteField& F = Et.field();
    const u32 p = F.characteristic();
    const u32 a = F.degree();
    const u32 g = (ell - 1) / 2;
    const u64 q = F.cardinality();

    Stage stage = kNoFullTwoTorsion;
    if (!Et.full_two_torsion().has_value()) return stage;
    stage = kNotOrdinary;
    auto [t, ordinary] = Et.trace_and_ordinary();
    if (!ordinary) return stage;
    if (paper_faithful) {
        stage = kPaperFaithfulFiltered;
        if (!four_torsion_rational(Et)) return stage;
    }
    stage = kNoInertEigenvalue;
    if (!has_primitive_eigenvalue(t, q, ell)) return stage;
    stage = kNoRationalKernel;
    auto kernels = enumerate_rational_kernels(Et, ell);
    if (kernel_filter) {
        std::vector<KernelData> kept;
        for (KernelData& K : kernels)
            if (K.kernel_poly == *kernel_filter) kept.push_back(std::move(K));
        kernels = std::move(kept);
    }
    if (kernels.empty()) return stage;
    stage = kNoInertKernel;

    for (const KernelData& K : kernels) {
        if (K.frobenius_character_order != ell - 1) continue;
        if (stage < kFrameFailed) stage = kFrameFailed;
        IsogenyData I = velu(K);
        if (!I.codomain.full_two_torsion().has_value()) continue;
        for (const auto& pairing : kPairings) {
            auto [frame, rep] = compute_frame(I, Eprime, pairing);
            if (rep.flag || frame.p_prime_in_two_torsion) continue;
            if (stage < kModelDefect) stage = kModelDefect;
            HyperellipticModel D, Dp;
            try {
                D = build_D(I, frame);
                Dp = build_D_prime(I, frame);
            } catch (const not_squarefree_defect&) {
                continue;
            }
            if (stage < kCountInconsistent) stage = kCountInconsistent;
            std::vector<i64> counts;
            LPolynomial Lk;
            try {
                for (u32 m = 1; m <= g; ++m)
                    counts.push_back(i64(count_points_hyperelliptic(D, m)));
                Lk = lpoly_from_counts(counts, mpz_class(long(q)), g);
            } catch (const count_inconsistency&) {
                continue;
            }
            if (stage < kInertShapeFailed) stage = kInertShapeFailed;
            if (!inert_shape_check(Lk, g)) continue;
            if (stage < kNotPowerOfElliptic) stage = kNotPowerOfElliptic;
            LPolynomial LK = base_change(Lk, ell - 1);
            auto pow = power_of_elliptic(LK, g, p);
            if (!pow) continue;
            if (stage < kQuadraticNotOrdinary) stage = kQuadraticNotOrdinary;
            if (!pow->ordinary) continue;
            if (stage < kDescentFailed) stage = kDescentFailed;

            // elliptic factor over F_Q, Q = q^g, with trace b, b^2 - 2Q = a
            FiniteField Qf = FiniteField::make(p, a * g);
            mpz_class disc = pow->a + 2 * mpz_class(long(Qf.cardinality()));
            if (mpz_perfect_square_p(disc.get_mpz_t()) == 0) continue;
            mpz_class broot;
            mpz_sqrt(broot.get_mpz_t(), disc.get_mpz_t());
            i64 b = broot.get_si();
            auto E1 = find_elliptic_with_trace(Qf, b);
            if (!E1) {
                E1 = find_elliptic_with_trace(Qf, -b);
                b = -b;
            }
            if (!E1) continue;

            FiniteField Kf = FiniteField::make(p, a * (ell - 1));
            Embedding eQ = Embedding::make(Qf, Kf);
            Embedding ek = Embedding::make(F, Kf);
            EllipticCurve E1K = E1->base_change(eQ);
            HyperellipticModel DK{Kf, ek.map(D.h), D.genus};
            FunctionFieldCurve tw = make_twist(E1K, DK);

            cert.p = p;
            cert.ell = ell;
            cert.base_degree = a;
            cert.paper_faithful = paper_faithful;
            cert.seed = seed;
            cert.k = F;
            cert.E_prime = Eprime;
            cert.E_tilde = Et;
            cert.E = I.codomain;
            cert.pairing = pairing;
            cert.kernel_poly = K.kernel_poly;
            cert.chi = K.frobenius_chi;
            cert.chi_order = K.frobenius_character_order;
            cert.N = I.u.num;
            cert.M = I.u.den;
            cert.y_map_factor = I.y_map_factor;
            cert.c = *frame.P_prime;
            cert.h = D.h;
            cert.genus_D = D.genus;
            cert.h_prime = Dp.h;
            cert.genus_D_prime = Dp.genus;
            cert.counts = counts;
            cert.split.L_over_k = Lk;
            cert.split.K_degree = ell - 1;
            cert.split.L_over_K = LK;
            cert.split.a = pow->a;
            cert.split.q_K = LK.q;
            cert.split.ordinary = true;
            cert.split.inert_shape_ok = true;
            cert.split.p_rank_value = p_rank(Lk, p);
            cert.split.cartier_manin_rank = cartier_manin(D).stable_rank;
            cert.Q_field = Qf;
            cert.E1 = *E1;
            cert.b = b;
            cert.K_field = Kf;
            cert.twist = tw;
            cert.rank_bound_value = rank_bound(cert.split).bound;
            return kAccepted;
        }
    }
    return stage;
}

void validate_primes(u32 p, u32 ell) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
        throw field_error("p must be an odd prime");
    if (ell < 3 || ell % 2 == 0 || !is_prime_u64(ell))
        throw field_error("ell must be an odd prime");
    if (p == ell) throw field_error("p and ell must be distinct");
}

// Exhaustive counting up to q^g and exact arithmetic in the degree
// a*(ell-1) extension must stay inside the machine-word guards.
bool degree_feasible(u32 p, u32 a, u32 ell) {
    double qbits = a * std::log2(double(p));
    u32 g = (ell - 1) / 2;
    return qbits * g <= 26.0 && qbits * (ell - 1) < 63.0;
}

}  // namespace

std::optional<Certificate> construct_certificate(
    const EllipticCurve& E_tilde, u32 ell, const EllipticCurve* E_prime,
    const Poly* kernel_filter, bool paper_faithful, u64 seed,
    std::string* fail_reason) {
    const FiniteField& F = E_tilde.field();
    validate_primes(F.characteristic(), ell);
    if (!degree_feasible(F.characteristic(), F.degree(), ell))
        throw field_error("base field too large for this ell");

    EllipticCurve Ep;
    if (E_prime) {
        Ep = *E_prime;
    } else {
        auto picked = pick_E_prime(F, lex_elements(F), paper_faithful);
        if (!picked)
            throw field_error("no ordinary curve with full 2-torsion over k");
        Ep = *picked;
    }

    Certificate cert;
    Stage stage = run_candidate(E_tilde, Ep, ell, kernel_filter,
                                paper_faithful, seed, cert);
    if (stage == kAccepted) return cert;
    if (fail_reason) *fail_reason = stage_name(stage);
    return std::nullopt;
}

SearchResult search(const SearchConfig& cfg) {
    validate_primes(cfg.p, cfg.ell);
#ifdef _OPENMP
    if (cfg.jobs > 0) omp_set_num_threads(int(cfg.jobs));
#endif

    SearchResult R;
    bool budget_hit = false;

    for (u32 a = 1; a <= cfg.max_base_degree && !budget_hit; ++a) {
        if (!degree_feasible(cfg.p, a, cfg.ell)) break;
        if (cfg.paper_faithful) {
            u64 qq = 1;
            for (u32 i = 0; i < a; ++i) qq *= cfg.p;
            if (qq % 4 != 1) continue;
        }
        FiniteField F = FiniteField::make(cfg.p, a);
        std::vector<FieldElement> elems = lex_elements(F);
        auto Eprime = pick_E_prime(F, elems, cfg.paper_faithful);
        if (!Eprime) continue;

        // Candidate evaluations are independent: run them on a worker pool
        // in fixed-size chunks, then consume the results strictly in
        // enumeration order, so output, counters and the stopping point are
        // byte-identical to a serial run.
        const u64 m = elems.size();
        const u64 total = m * m * m;
        constexpr u64 kChunk = 2048;
        u64 pos = 0;
        while (pos < total && !budget_hit) {
            u64 end = std::min(total, pos + kChunk);
            if (R.examined + (end - pos) > cfg.max_candidates) {
                end = pos + (cfg.max_candidates - R.examined);
                budget_hit = true;
                if (end <= pos) break;
            }
            const u64 n = end - pos;
            std::vector<int> stages(n, int(kSingular));
            std::vector<std::unique_ptr<Certificate>> found(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
            for (i64 off = 0; off < i64(n); ++off) {
                u64 idx = pos + u64(off);
                Stage stage = kSingular;
                Certificate cert;
                try {
                    EllipticCurve Et =
                        EllipticCurve::make(elems[idx / (m * m)],
                                            elems[(idx / m) % m],
                                            elems[idx % m]);
                    stage = run_candidate(Et, *Eprime, cfg.ell, nullptr,
                                          cfg.paper_faithful, cfg.seed,
                                          cert);
                } catch (const field_error&) {
                }
                stages[size_t(off)] = int(stage);
                if (stage == kAccepted)
                    found[size_t(off)] =
                        std::make_unique<Certificate>(std::move(cert));
            }
            for (u64 off = 0; off < n; ++off) {
                ++R.examined;
                if (stages[off] == int(kAccepted)) {
                    R.certificates.push_back(std::move(*found[off]));
                    if (R.certificates.size() >= cfg.max_certificates)
                        return R;
                } else {
                    ++R.rejections[stage_name(Stage(stages[off]))];
                }
            }
            pos = end;
        }
    }

    if (R.certificates.empty())
        R.advice =
            budget_hit
                ? "candidate budget exhausted before a certificate was found"
                : "no certificate found at these base degrees; enlarge the "
                  "base field (raise max_base_degree)";
    return R;
}

}  // namespace jacsplit

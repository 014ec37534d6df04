#pragma once

#include <map>
#include <string>

#include "jacsplit/twist.hpp"

namespace jacsplit {

/// Everything needed to re-verify one constructed example offline, with no
/// search: the aligned curves, the isogeny, the models, the counts, the
/// spectral certificate and the function-field twist.
struct Certificate {
    // config echo
    u32 p = 0;
    u32 ell = 0;
    u32 base_degree = 0;
    bool paper_faithful = false;
    u64 seed = 0;

    FiniteField k;  // base field F_q, q = p^base_degree
    EllipticCurve E_prime, E_tilde, E;
    std::array<int, 3> pairing{0, 1, 2};
    Poly kernel_poly;
    u32 chi = 0;
    u32 chi_order = 0;
    Poly N, M;                      // x-map u = N / M
    RationalFunction y_map_factor;  // v in (x, y) -> (u(x), y v(x))
    FieldElement c;                 // P' on the x-line of E
    Poly h;                         // model of D
    u32 genus_D = 0;
    Poly h_prime;  // model of D'
    u32 genus_D_prime = 0;
    std::vector<i64> counts;  // N_1..N_g of D over F_q
    SplitCertificate split;

    // descent data for the elliptic factor: E1 over F_Q, Q = q^g, with
    // trace b satisfying b^2 - 2Q = a; its base change to K has trace a
    FiniteField Q_field;
    EllipticCurve E1;
    i64 b = 0;

    FiniteField K_field;  // F_{q^(ell-1)}
    FunctionFieldCurve twist;
    u32 rank_bound_value = 0;

    std::string timestamp;  // excluded from the canonical hash
};

/// Fixed-key-order JSON document (schema 1).
std::string certificate_to_json(const Certificate& c);

/// Parse; throws field_error with the offending field path on malformed
/// input.
Certificate certificate_from_json(const std::string& text);

/// The serialized document with the timestamp removed: the byte string the
/// hash commits to.
std::string canonical_bytes(const std::string& json_text);

/// Hex SHA-256 of the canonical bytes.
std::string certificate_hash(const std::string& json_text);

struct VerificationReport {
    std::vector<std::pair<std::string, bool>> checks;
    bool ok = true;

    void add(const std::string& name, bool pass) {
        checks.emplace_back(name, pass);
        ok = ok && pass;
    }
};

/// Re-derive every claim in the certificate from its primary inputs:
/// re-runs the isogeny construction, rebuilds both models, recounts points,
/// recomputes the L-polynomials and filters, rebuilds the twist.
VerificationReport verify_certificate(const Certificate& c);

}  // namespace jacsplit

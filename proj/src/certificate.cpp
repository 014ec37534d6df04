#include "jacsplit/certificate.hpp"

#include <openssl/evp.h>

#include <ctime>

#include "json.hpp"

namespace jacsplit {

using json = nlohmann::ordered_json;

namespace {

json element_json(const FieldElement& e) {
    json a = json::array();
    for (u32 c : e.coords()) a.push_back(c);
    return a;
}

json poly_json(const Poly& f) {
    json a = json::array();
    for (const FieldElement& c : f.coeffs()) a.push_back(element_json(c));
    return a;
}

json field_json(const FiniteField& F) {
    json j;
    j["p"] = F.characteristic();
    j["degree"] = F.degree();
    if (F.degree() > 1) {
        json m = json::array();
        for (u32 c : F.modulus_raw()) m.push_back(c);
        j["modulus"] = m;
    }
    return j;
}

json curve_json(const EllipticCurve& E) {
    json j;
    j["a2"] = element_json(E.a2());
    j["a4"] = element_json(E.a4());
    j["a6"] = element_json(E.a6());
    return j;
}

json mpz_json(const mpz_class& v) { return v.get_str(); }

json lpoly_json(const LPolynomial& L) {
    json j;
    json a = json::array();
    for (const mpz_class& c : L.a) a.push_back(mpz_json(c));
    j["coefficients"] = a;
    j["q"] = mpz_json(L.q);
    j["genus"] = L.g;
    return j;
}

// --- parsing helpers; every accessor names its path on failure ---

[[noreturn]] void bad(const std::string& path, const std::string& why) {
    throw field_error("certificate schema error at " + path + ": " + why);
}

const json& get(const json& j, const std::string& key,
                const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) bad(path + "." + key, "missing");
    return *it;
}

FieldElement parse_element(const json& j, const FiniteField& F,
                           const std::string& path) {
    if (!j.is_array()) bad(path, "expected coordinate list");
    std::vector<u32> c;
    for (const auto& v : j) c.push_back(v.get<u32>());
    while (c.size() < F.degree()) c.push_back(0);
    if (c.size() != F.degree()) bad(path, "wrong coordinate count");
    return F.from_coords(c);
}

Poly parse_poly(const json& j, const FiniteField& F, const std::string& path) {
    if (!j.is_array()) bad(path, "expected coefficient list");
    std::vector<FieldElement> c;
    size_t i = 0;
    for (const auto& v : j)
        c.push_back(parse_element(v, F, path + "[" + std::to_string(i++) + "]"));
    return Poly::from_coeffs(F, c);
}

FiniteField parse_field(const json& j, const std::string& path) {
    u32 p = get(j, "p", path).get<u32>();
    u32 d = get(j, "degree", path).get<u32>();
    if (d == 1) return FiniteField::make(p, 1);
    std::vector<u32> m;
    for (const auto& v : get(j, "modulus", path)) m.push_back(v.get<u32>());
    FiniteField F = FiniteField::with_modulus(p, m);
    if (F.degree() != d) bad(path + ".degree", "does not match the modulus");
    return F;
}

EllipticCurve parse_curve(const json& j, const FiniteField& F,
                          const std::string& path) {
    return EllipticCurve::make(parse_element(get(j, "a2", path), F, path),
                               parse_element(get(j, "a4", path), F, path),
                               parse_element(get(j, "a6", path), F, path));
}

LPolynomial parse_lpoly(const json& j, const std::string& path) {
    LPolynomial L;
    for (const auto& v : get(j, "coefficients", path))
        L.a.emplace_back(v.get<std::string>());
    L.q = mpz_class(get(j, "q", path).get<std::string>());
    L.g = get(j, "genus", path).get<u32>();
    if (L.a.size() != 2 * size_t(L.g) + 1) bad(path, "coefficient count");
    return L;
}

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

std::string certificate_to_json(const Certificate& c) {
    json j;
    j["schema"] = 1;
    j["artifact_version"] = "1.0.0";
    j["timestamp"] = c.timestamp.empty() ? iso_now() : c.timestamp;
    json cfg;
    cfg["p"] = c.p;
    cfg["ell"] = c.ell;
    cfg["base_degree"] = c.base_degree;
    cfg["paper_faithful"] = c.paper_faithful;
    cfg["seed"] = c.seed;
    j["config"] = cfg;
    j["base_field"] = field_json(c.k);
    j["E_prime"] = curve_json(c.E_prime);
    j["E_tilde"] = curve_json(c.E_tilde);
    j["E"] = curve_json(c.E);
    j["pairing"] = c.pairing;
    j["kernel_poly"] = poly_json(c.kernel_poly);
    j["chi"] = c.chi;
    j["chi_order"] = c.chi_order;
    json u;
    u["N"] = poly_json(c.N);
    u["M"] = poly_json(c.M);
    j["u"] = u;
    json v;
    v["num"] = poly_json(c.y_map_factor.num);
    v["den"] = poly_json(c.y_map_factor.den);
    j["y_map_factor"] = v;
    j["c"] = element_json(c.c);
    json D;
    D["h"] = poly_json(c.h);
    D["genus"] = c.genus_D;
    j["D"] = D;
    json Dp;
    Dp["h"] = poly_json(c.h_prime);
    Dp["genus"] = c.genus_D_prime;
    j["D_prime"] = Dp;
    j["counts"] = c.counts;
    json s;
    s["L_k"] = lpoly_json(c.split.L_over_k);
    s["K_degree"] = c.split.K_degree;
    s["L_K"] = lpoly_json(c.split.L_over_K);
    s["a"] = mpz_json(c.split.a);
    s["q_K"] = mpz_json(c.split.q_K);
    s["ordinary"] = c.split.ordinary;
    s["inert_shape_ok"] = c.split.inert_shape_ok;
    s["p_rank"] = c.split.p_rank_value;
    s["cartier_manin_rank"] = c.split.cartier_manin_rank;
    j["split"] = s;
    json d;
    d["field"] = field_json(c.Q_field);
    d["E1"] = curve_json(c.E1);
    d["b"] = c.b;
    j["descent"] = d;
    json t;
    t["field"] = field_json(c.K_field);
    t["A2"] = poly_json(c.twist.A2);
    t["A4"] = poly_json(c.twist.A4);
    t["A6"] = poly_json(c.twist.A6);
    t["rank_bound"] = c.rank_bound_value;
    j["twist"] = t;
    return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw field_error(std::string("certificate parse error: ") + e.what());
    }
    if (get(j, "schema", "$").get<int>() != 1)
        bad("$.schema", "unsupported version");
    Certificate c;
    const json& cfg = get(j, "config", "$");
    c.p = get(cfg, "p", "$.config").get<u32>();
    c.ell = get(cfg, "ell", "$.config").get<u32>();
    c.base_degree = get(cfg, "base_degree", "$.config").get<u32>();
    c.paper_faithful = get(cfg, "paper_faithful", "$.config").get<bool>();
    c.seed = get(cfg, "seed", "$.config").get<u64>();
    c.timestamp = get(j, "timestamp", "$").get<std::string>();
    c.k = parse_field(get(j, "base_field", "$"), "$.base_field");
    c.E_prime = parse_curve(get(j, "E_prime", "$"), c.k, "$.E_prime");
    c.E_tilde = parse_curve(get(j, "E_tilde", "$"), c.k, "$.E_tilde");
    c.E = parse_curve(get(j, "E", "$"), c.k, "$.E");
    auto pr = get(j, "pairing", "$");
    for (int i = 0; i < 3; ++i) c.pairing[size_t(i)] = pr.at(size_t(i)).get<int>();
    c.kernel_poly = parse_poly(get(j, "kernel_poly", "$"), c.k, "$.kernel_poly");
    c.chi = get(j, "chi", "$").get<u32>();
    c.chi_order = get(j, "chi_order", "$").get<u32>();
    const json& u = get(j, "u", "$");
    c.N = parse_poly(get(u, "N", "$.u"), c.k, "$.u.N");
    c.M = parse_poly(get(u, "M", "$.u"), c.k, "$.u.M");
    const json& v = get(j, "y_map_factor", "$");
    c.y_map_factor.num = parse_poly(get(v, "num", "$.y_map_factor"), c.k,
                                    "$.y_map_factor.num");
    c.y_map_factor.den = parse_poly(get(v, "den", "$.y_map_factor"), c.k,
                                    "$.y_map_factor.den");
    c.c = parse_element(get(j, "c", "$"), c.k, "$.c");
    const json& D = get(j, "D", "$");
    c.h = parse_poly(get(D, "h", "$.D"), c.k, "$.D.h");
    c.genus_D = get(D, "genus", "$.D").get<u32>();
    const json& Dp = get(j, "D_prime", "$");
    c.h_prime = parse_poly(get(Dp, "h", "$.D_prime"), c.k, "$.D_prime.h");
    c.genus_D_prime = get(Dp, "genus", "$.D_prime").get<u32>();
    for (const auto& n : get(j, "counts", "$")) c.counts.push_back(n.get<i64>());
    const json& s = get(j, "split", "$");
    c.split.L_over_k = parse_lpoly(get(s, "L_k", "$.split"), "$.split.L_k");
    c.split.K_degree = get(s, "K_degree", "$.split").get<u32>();
    c.split.L_over_K = parse_lpoly(get(s, "L_K", "$.split"), "$.split.L_K");
    c.split.a = mpz_class(get(s, "a", "$.split").get<std::string>());
    c.split.q_K = mpz_class(get(s, "q_K", "$.split").get<std::string>());
    c.split.ordinary = get(s, "ordinary", "$.split").get<bool>();
    c.split.inert_shape_ok = get(s, "inert_shape_ok", "$.split").get<bool>();
    c.split.p_rank_value = get(s, "p_rank", "$.split").get<u32>();
    c.split.cartier_manin_rank =
        get(s, "cartier_manin_rank", "$.split").get<u32>();
    const json& d = get(j, "descent", "$");
    c.Q_field = parse_field(get(d, "field", "$.descent"), "$.descent.field");
    c.E1 = parse_curve(get(d, "E1", "$.descent"), c.Q_field, "$.descent.E1");
    c.b = get(d, "b", "$.descent").get<i64>();
    const json& t = get(j, "twist", "$");
    c.K_field = parse_field(get(t, "field", "$.twist"), "$.twist.field");
    c.twist.base = c.K_field;
    c.twist.A2 = parse_poly(get(t, "A2", "$.twist"), c.K_field, "$.twist.A2");
    c.twist.A4 = parse_poly(get(t, "A4", "$.twist"), c.K_field, "$.twist.A4");
    c.twist.A6 = parse_poly(get(t, "A6", "$.twist"), c.K_field, "$.twist.A6");
    c.rank_bound_value = get(t, "rank_bound", "$.twist").get<u32>();
    return c;
}

std::string canonical_bytes(const std::string& json_text) {
    json j = json::parse(json_text);
    j.erase("timestamp");
    return j.dump(2) + "\n";
}

std::string certificate_hash(const std::string& json_text) {
    std::string bytes = canonical_bytes(json_text);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

VerificationReport verify_certificate(const Certificate& c) {
    VerificationReport R;
    const FiniteField& F = c.k;
    u64 q = F.cardinality();
    R.add("base field matches config",
          F.characteristic() == c.p && F.degree() == c.base_degree);
    R.add("ell is an odd prime distinct from p",
          c.ell >= 3 && c.ell % 2 == 1 && is_prime_u64(c.ell) && c.ell != c.p);
    u32 g = (c.ell - 1) / 2;

    // curves and 2-torsion
    auto [tE, ordE] = c.E.trace_and_ordinary();
    R.add("E ordinary", ordE);
    R.add("E has full rational 2-torsion",
          c.E.full_two_torsion().has_value());
    auto [tEp, ordEp] = c.E_prime.trace_and_ordinary();
    R.add("E_prime ordinary with full rational 2-torsion",
          ordEp && c.E_prime.full_two_torsion().has_value());
    if (c.paper_faithful) {
        R.add("paper-faithful: q = 1 mod 4", q % 4 == 1);
    }

    // kernel and isogeny reconstruction
    bool kernel_ok = false, velu_ok = false, chi_ok = false;
    try {
        kernel_ok = c.kernel_poly.is_monic() &&
                    c.kernel_poly.degree() == int(g) &&
                    (c.E_tilde.division_polynomial(c.ell) % c.kernel_poly)
                        .is_zero();
        KernelData K{c.E_tilde, c.ell, c.kernel_poly, c.chi, c.chi_order,
                     c.chi_order};
        u32 chi = frobenius_character(K);
        chi_ok = chi == c.chi;
        u32 x = chi % c.ell, ord = 1;
        while (x != 1) x = u32(u64(x) * chi % c.ell), ++ord;
        chi_ok = chi_ok && ord == c.chi_order;
        IsogenyData I = velu(K);
        velu_ok = I.codomain == c.E && I.u.num == c.N && I.u.den == c.M &&
                  I.y_map_factor == c.y_map_factor &&
                  check_cover_compatibility(I);
    } catch (const field_error&) {
    }
    R.add("kernel polynomial divides the division polynomial", kernel_ok);
    R.add("Frobenius character reproduces", chi_ok);
    R.add("kernel is inert", c.chi_order == c.ell - 1);
    R.add("isogeny reconstruction", velu_ok);

    // frame and models
    bool frame_ok = false, D_ok = false, Dp_ok = false;
    try {
        IsogenyData I{c.E_tilde, c.E, RationalFunction{c.N, c.M},
                      c.y_map_factor};
        auto [frame, rep] = compute_frame(I, c.E_prime, c.pairing);
        frame_ok = !rep.flag && frame.P_prime.has_value() &&
                   *frame.P_prime == c.c && !frame.p_prime_in_two_torsion;
        HyperellipticModel D = build_D(I, frame);
        D_ok = D.h == c.h && D.genus == c.genus_D && c.genus_D == g &&
               c.h.degree() == int(c.ell);
        HyperellipticModel Dp = build_D_prime(I, frame);
        Dp_ok = Dp.h == c.h_prime && Dp.genus == c.genus_D_prime &&
                c.genus_D_prime == (c.ell + 1) / 2;
    } catch (const field_error&) {
    }
    R.add("frame non-degenerate with P' outside the branch locus", frame_ok);
    R.add("h reconstruction", D_ok);
    R.add("h' reconstruction", Dp_ok);

    // counts and L-polynomials
    bool counts_ok = false, lk_ok = false, lK_ok = false, power_ok = false;
    bool pr_ok = false, cm_ok = false;
    try {
        HyperellipticModel D{F, c.h, c.genus_D};
        counts_ok = c.counts.size() == g;
        for (u32 m = 1; m <= g && counts_ok; ++m)
            counts_ok = c.counts[m - 1] ==
                        i64(count_points_hyperelliptic(D, m));
        LPolynomial Lk =
            lpoly_from_counts(c.counts, mpz_class(long(q)), g);
        lk_ok = Lk == c.split.L_over_k && inert_shape_check(Lk, g) &&
                c.split.inert_shape_ok;
        lK_ok = base_change(Lk, c.ell - 1) == c.split.L_over_K &&
                c.split.K_degree == c.ell - 1;
        mpz_class qK;
        mpz_pow_ui(qK.get_mpz_t(), mpz_class(long(q)).get_mpz_t(), c.ell - 1);
        lK_ok = lK_ok && qK == c.split.q_K;
        auto pow = power_of_elliptic(c.split.L_over_K, g, c.p);
        power_ok = pow.has_value() && pow->a == c.split.a && pow->ordinary &&
                   c.split.ordinary;
        pr_ok = p_rank(Lk, c.p) == c.split.p_rank_value &&
                c.split.p_rank_value == g;
        cm_ok = cartier_manin(D).stable_rank == c.split.cartier_manin_rank &&
                c.split.cartier_manin_rank == g;
    } catch (const field_error&) {
    }
    R.add("point counts reproduce", counts_ok);
    R.add("L over the base field and inert shape", lk_ok);
    R.add("L over the extension by exact base change", lK_ok);
    R.add("power_of_elliptic with ordinary trace", power_ok);
    R.add("p-rank is the genus", pr_ok);
    R.add("Cartier-Manin stable rank matches", cm_ok);

    // descent and twist
    bool descent_ok = false, twist_ok = false;
    try {
        descent_ok = c.Q_field.characteristic() == c.p &&
                     c.Q_field.degree() == c.base_degree * g &&
                     c.E1.field() == c.Q_field;
        mpz_class Qcard(long(c.Q_field.cardinality()));
        descent_ok = descent_ok &&
                     mpz_class(c.b) * c.b - 2 * Qcard == c.split.a &&
                     c.E1.trace_and_ordinary().first == c.b;
        descent_ok = descent_ok && c.K_field.characteristic() == c.p &&
                     c.K_field.degree() == c.base_degree * (c.ell - 1);
        Embedding eQ = Embedding::make(c.Q_field, c.K_field);
        Embedding ek = Embedding::make(F, c.K_field);
        EllipticCurve E1K = c.E1.base_change(eQ);
        Poly hK = ek.map(c.h);
        HyperellipticModel DK{c.K_field, hK, c.genus_D};
        FunctionFieldCurve T = make_twist(E1K, DK);
        twist_ok = T.A2 == c.twist.A2 && T.A4 == c.twist.A4 &&
                   T.A6 == c.twist.A6 && untwist_check(c.twist, E1K, hK) &&
                   twist_j_invariant(c.twist) == E1K.j_invariant() &&
                   rank_bound(c.split).bound == c.rank_bound_value &&
                   c.rank_bound_value == g;
    } catch (const field_error&) {
    }
    R.add("elliptic factor descent", descent_ok);
    R.add("function-field twist", twist_ok);
    return R;
}

}  // namespace jacsplit

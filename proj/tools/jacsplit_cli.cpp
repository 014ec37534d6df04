// Command-line front end: search for certified examples, verify or
// re-derive single certificates, and run the standalone zeta / twist tools.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "jacsplit/pipeline.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace jacsplit;
using ojson = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

std::vector<u32> parse_ints(const std::vector<std::string>& toks,
                            const std::string& what) {
    std::vector<u32> out;
    for (const std::string& t : toks) {
        size_t pos = 0;
        unsigned long v = std::stoul(t, &pos);
        if (pos != t.size()) throw field_error("bad integer in " + what);
        out.push_back(u32(v));
    }
    return out;
}

// One field element: comma-separated coordinates, little-endian,
// e.g. "2" or "0,1".
FieldElement parse_element_arg(const FiniteField& F, const std::string& s,
                               const std::string& what) {
    std::vector<u32> c = parse_ints(split(s, ','), what);
    if (c.size() > F.degree()) throw field_error(what + ": too many coords");
    while (c.size() < F.degree()) c.push_back(0);
    return F.from_coords(c);
}

// One polynomial: comma-separated coefficients, little-endian; each
// coefficient is an integer or colon-separated coordinates,
// e.g. "2,1,0,1" over F_p or "2,0:1,1" over an extension.
Poly parse_poly_arg(const FiniteField& F, const std::string& s,
                    const std::string& what) {
    std::vector<FieldElement> c;
    for (const std::string& tok : split(s, ',')) {
        std::vector<u32> coords = parse_ints(split(tok, ':'), what);
        if (coords.size() > F.degree())
            throw field_error(what + ": too many coords in a coefficient");
        while (coords.size() < F.degree()) coords.push_back(0);
        c.push_back(F.from_coords(coords));
    }
    return Poly::from_coeffs(F, c);
}

std::string poly_str(const Poly& f) {
    if (f.degree() < 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        const FieldElement& c = f.coeffs()[size_t(i)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::vector<u32> coords = c.coords();
        bool simple = true;
        for (size_t j = 1; j < coords.size(); ++j)
            if (coords[j] != 0) simple = false;
        if (simple) {
            if (coords[0] != 1 || i == 0) os << coords[0];
        } else {
            os << "[";
            for (size_t j = 0; j < coords.size(); ++j)
                os << (j ? "," : "") << coords[j];
            os << "]";
        }
        if (i >= 1) os << (coords[0] != 1 || !simple ? "*x" : "x");
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

ojson element_json(const FieldElement& e) {
    ojson a = ojson::array();
    for (u32 c : e.coords()) a.push_back(c);
    return a;
}

ojson poly_json(const Poly& f) {
    ojson a = ojson::array();
    for (const FieldElement& c : f.coeffs()) a.push_back(element_json(c));
    return a;
}

ojson field_json(const FiniteField& F) {
    ojson j;
    j["p"] = F.characteristic();
    j["degree"] = F.degree();
    if (F.degree() > 1) {
        ojson m = ojson::array();
        for (u32 c : F.modulus_raw()) m.push_back(c);
        j["modulus"] = m;
    }
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw field_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw field_error("cannot write " + out);
    f << text;
}

void print_search_summary(const SearchResult& R,
                          const std::vector<std::string>& files) {
    std::cout << "candidates examined: " << R.examined << "\n";
    if (!R.rejections.empty()) {
        std::cout << "rejections by stage:\n";
        for (const auto& [name, count] : R.rejections)
            std::cout << "  " << name << ": " << count << "\n";
    }
    std::cout << "certificates: " << R.certificates.size() << "\n";
    for (size_t i = 0; i < R.certificates.size(); ++i) {
        const Certificate& c = R.certificates[i];
        std::cout << "  " << files[i] << "  q=" << c.k.cardinality()
                  << " genus=" << c.genus_D
                  << " rank_bound=" << c.rank_bound_value << "\n";
    }
    if (!R.advice.empty()) std::cout << "advice: " << R.advice << "\n";
}

int cmd_search(const SearchConfig& cfg, const std::string& out_dir) {
    SearchResult R = search(cfg);
    fs::create_directories(out_dir);
    std::vector<std::string> files;
    for (const Certificate& c : R.certificates) {
        std::string doc = certificate_to_json(c);
        std::string hash = certificate_hash(doc);
        std::ostringstream name;
        name << "cert_p" << c.p << "_ell" << c.ell << "_d" << c.base_degree
             << "_" << hash.substr(0, 12) << ".json";
        std::string path = (fs::path(out_dir) / name.str()).string();
        write_output(path, doc);
        files.push_back(path);
    }
    print_search_summary(R, files);
    return 0;
}

int cmd_verify(const std::vector<std::string>& paths, bool quiet) {
    bool all_ok = true;
    for (const std::string& path : paths) {
        Certificate c;
        try {
            c = certificate_from_json(read_file(path));
        } catch (const std::exception& e) {
            std::cout << path << ": FAIL (" << e.what() << ")\n";
            all_ok = false;
            continue;
        }
        VerificationReport rep;
        try {
            rep = verify_certificate(c);
        } catch (const std::exception& e) {
            std::cout << path << ": FAIL (" << e.what() << ")\n";
            all_ok = false;
            continue;
        }
        if (rep.ok) {
            std::cout << path << ": PASS (" << rep.checks.size()
                      << " checks)\n";
        } else {
            all_ok = false;
            std::cout << path << ": FAIL\n";
            if (!quiet)
                for (const auto& [name, pass] : rep.checks)
                    if (!pass) std::cout << "  failed: " << name << "\n";
        }
    }
    return all_ok ? 0 : 1;
}

int cmd_zeta(u32 p, u32 degree, const std::string& h_str, u32 extra_counts) {
    FiniteField F = FiniteField::make(p, degree);
    Poly h = parse_poly_arg(F, h_str, "--h");
    if (h.degree() < 3) throw field_error("--h: degree must be at least 3");
    if (poly_gcd(h, h.derivative()).degree() > 0)
        throw field_error("--h: polynomial must be squarefree");
    u32 g = u32((h.degree() - 1) / 2);
    HyperellipticModel H{F, h, g};
    std::cout << "field: q = " << F.cardinality() << " (p=" << p
              << ", degree=" << degree << ")\n";
    std::cout << "h(x) = " << poly_str(h) << "\n";
    std::cout << "genus: " << g << "\n";
    std::vector<i64> counts;
    u32 total = g + extra_counts;
    for (u32 m = 1; m <= total; ++m) {
        counts.push_back(i64(count_points_hyperelliptic(H, m)));
        std::cout << "N_" << m << " = " << counts.back() << "\n";
    }
    counts.resize(g);
    LPolynomial L =
        lpoly_from_counts(counts, mpz_class(long(F.cardinality())), g);
    std::cout << "L(T) coefficients (ascending):";
    for (const mpz_class& c : L.a) std::cout << " " << c.get_str();
    std::cout << "\n";
    std::cout << "p-rank: " << p_rank(L, p) << "\n";
    return 0;
}

int cmd_construct(u32 p, u32 degree, u32 ell, const std::string& a2s,
                  const std::string& a4s, const std::string& a6s,
                  const std::string& kernel_str,
                  const std::string& eprime_str, bool paper_faithful,
                  u64 seed, const std::string& out) {
    FiniteField F = FiniteField::make(p, degree);
    EllipticCurve Et =
        EllipticCurve::make(parse_element_arg(F, a2s, "--a2"),
                            parse_element_arg(F, a4s, "--a4"),
                            parse_element_arg(F, a6s, "--a6"));
    std::optional<Poly> kernel;
    if (!kernel_str.empty())
        kernel = parse_poly_arg(F, kernel_str, "--kernel");
    std::optional<EllipticCurve> Ep;
    if (!eprime_str.empty()) {
        std::vector<std::string> parts = split(eprime_str, ';');
        if (parts.size() != 3)
            throw field_error("--e-prime: expected a2;a4;a6");
        Ep = EllipticCurve::make(
            parse_element_arg(F, parts[0], "--e-prime"),
            parse_element_arg(F, parts[1], "--e-prime"),
            parse_element_arg(F, parts[2], "--e-prime"));
    }
    std::string reason;
    std::optional<Certificate> cert = construct_certificate(
        Et, ell, Ep ? &*Ep : nullptr, kernel ? &*kernel : nullptr,
        paper_faithful, seed, &reason);
    if (!cert) {
        std::cerr << "construction failed at stage: " << reason << "\n";
        return 1;
    }
    std::string doc = certificate_to_json(*cert);
    write_output(out, doc);
    std::cerr << "hash: " << certificate_hash(doc) << "\n";
    return 0;
}

int cmd_twist(const std::string& cert_path, const std::string& out) {
    std::string doc = read_file(cert_path);
    Certificate c = certificate_from_json(doc);
    ojson j;
    j["K"] = field_json(c.twist.base);
    j["A2"] = poly_json(c.twist.A2);
    j["A4"] = poly_json(c.twist.A4);
    j["A6"] = poly_json(c.twist.A6);
    j["j_invariant"] = element_json(twist_j_invariant(c.twist));
    j["rank_bound"] = c.rank_bound_value;
    j["certificate"] = certificate_hash(doc);
    write_output(out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Constructs and verifies certified families of high-rank twists of "
        "constant-j elliptic curves over function fields"};
    app.require_subcommand(1);

    // shared knobs
    u32 p = 3, ell = 5, degree = 1, max_base_degree = 4;
    bool paper_faithful = false, quiet = false;
    u64 seed = 0, max_candidates = u64(1) << 40;
    u32 max_certs = 1, jobs = 0, extra_counts = 0;
    std::string out, h_str, a2s, a4s, a6s, kernel_str, eprime_str;
    std::vector<std::string> paths;

    CLI::App* s = app.add_subcommand(
        "search", "Search base fields for certified examples");
    s->add_option("--p", p, "odd prime characteristic")->required();
    s->add_option("--ell", ell, "odd prime isogeny degree, != p")->required();
    s->add_option("--max-base-degree", max_base_degree,
                  "largest extension degree a to search (q = p^a)");
    s->add_flag("--paper-faithful", paper_faithful,
                "require q = 1 mod 4 and full rational 4-torsion");
    s->add_option("--seed", seed, "seed echoed into certificates");
    s->add_option("--max-candidates", max_candidates,
                  "candidate budget across all degrees");
    s->add_option("--max-certs", max_certs,
                  "stop after this many certificates");
    s->add_option("--jobs", jobs, "worker threads (0 = default)");
    s->add_option("--out", out, "output directory for certificate files")
        ->required();

    CLI::App* v = app.add_subcommand("verify",
                                     "Re-derive every claim in certificates");
    v->add_option("files", paths, "certificate JSON files")
        ->required()
        ->expected(-1);
    v->add_flag("--quiet", quiet, "suppress per-check failure details");

    CLI::App* c = app.add_subcommand(
        "construct", "One-shot build from an explicit curve (and kernel)");
    c->add_option("--p", p, "odd prime characteristic")->required();
    c->add_option("--degree", degree, "base field extension degree");
    c->add_option("--ell", ell, "odd prime isogeny degree, != p")->required();
    c->add_option("--a2", a2s, "curve a2 (comma-separated coords)")
        ->required();
    c->add_option("--a4", a4s, "curve a4 (comma-separated coords)")
        ->required();
    c->add_option("--a6", a6s, "curve a6 (comma-separated coords)")
        ->required();
    c->add_option("--kernel", kernel_str,
                  "kernel polynomial, little-endian coefficients "
                  "(comma-separated; coords within a coefficient use ':')");
    c->add_option("--e-prime", eprime_str,
                  "reference curve as a2;a4;a6 (default: auto-pick)");
    c->add_flag("--paper-faithful", paper_faithful,
                "require q = 1 mod 4 and full rational 4-torsion");
    c->add_option("--seed", seed, "seed echoed into the certificate");
    c->add_option("--out", out, "output file (default stdout)");

    CLI::App* z = app.add_subcommand(
        "zeta", "Counts and L-polynomial of y^2 = h(x) over F_{p^degree}");
    z->set_help_flag("--help", "print this help message and exit");
    z->add_option("--h", h_str,
                  "squarefree h, little-endian coefficients "
                  "(comma-separated; coords within a coefficient use ':')")
        ->required();
    z->add_option("--p", p, "odd prime characteristic")->required();
    z->add_option("--degree", degree, "base field extension degree");
    z->add_option("--extra-counts", extra_counts,
                  "print this many counts beyond N_1..N_g");

    CLI::App* t = app.add_subcommand(
        "twist", "Emit the function-field curve from a certificate");
    t->add_option("file", paths, "certificate JSON file")
        ->required()
        ->expected(1);
    t->add_option("--out", out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (s->parsed()) {
            SearchConfig cfg;
            cfg.p = p;
            cfg.ell = ell;
            cfg.max_base_degree = max_base_degree;
            cfg.paper_faithful = paper_faithful;
            cfg.seed = seed;
            cfg.max_candidates = max_candidates;
            cfg.max_certificates = max_certs;
            cfg.jobs = jobs;
            return cmd_search(cfg, out);
        }
        if (v->parsed()) return cmd_verify(paths, quiet);
        if (c->parsed())
            return cmd_construct(p, degree, ell, a2s, a4s, a6s, kernel_str,
                                 eprime_str, paper_faithful, seed, out);
        if (z->parsed()) return cmd_zeta(p, degree, h_str, extra_counts);
        if (t->parsed()) return cmd_twist(paths.at(0), out);
    } catch (const field_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

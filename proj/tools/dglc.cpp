// dglc: verification suites, dimension tables, signatures and holonomies.
//
// Exit codes: 0 success, 1 a check or validation failed, 2 bad configuration
// or input, 3 the input violates a mathematical precondition.

#include "dgl/forms.hpp"
#include "dgl/holonomy.hpp"
#include "dgl/quotients.hpp"
#include "dgl/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace dgl;

namespace {

struct RunConfig {
    int n = 2;
    int max_letters = 4;
    int degree = 3;
    double tol = 1e-5;
    unsigned seed = 1;
    std::string format = "pretty";
    bool json_flag = false;
    std::string out;
    bool numeric = false;
    std::string input;

    std::string fmt() const { return json_flag ? "json" : format; }
};

// dimension of the free Lie algebra on m generators, words of length ℓ (Witt)
double witt(double m, int ell)
{
    auto mobius = [](int k) {
        int r = 1;
        for (int p = 2; p * p <= k; ++p)
            if (k % p == 0) {
                k /= p;
                if (k % p == 0) return 0;
                r = -r;
            }
        return k > 1 ? -r : r;
    };
    double s = 0;
    for (int k = 1; k <= ell; ++k)
        if (ell % k == 0) s += mobius(k) * std::pow(m, ell / k);
    return s / ell;
}

std::string basis_estimate(int n, int letters)
{
    double m = std::ldexp(1.0, std::clamp(n, 1, 30)) - 1, total = 0;
    for (int ell = 1; ell <= letters; ++ell) total += witt(m, ell);
    std::ostringstream os;
    os << std::setprecision(3) << total;
    return os.str();
}

void guard(const RunConfig& c, bool uses_letters, bool uses_degree)
{
    if (c.n < 1 || c.n > 6) throw ConfigError("--n must be in 1..6 (got " + std::to_string(c.n) + ")");
    if (uses_letters && (c.max_letters < 1 || c.max_letters > 8))
        throw ConfigError("--max-letters must be in 1..8; at " + std::to_string(c.max_letters) + " letters the basis of f would have about " +
                          basis_estimate(c.n, c.max_letters) + " elements");
    if (uses_degree && (c.degree < 1 || c.degree > 6))
        throw ConfigError("--degree must be in 1..6; at degree " + std::to_string(c.degree) + " the nilpotent quotient would have up to about " +
                          basis_estimate(c.n, c.degree) + " basis elements");
    if (!(c.tol > 0)) throw ConfigError("--tol must be positive");
    if (c.fmt() != "json" && c.fmt() != "csv" && c.fmt() != "pretty") throw ConfigError("--format must be json, csv or pretty");
}

void emit(const RunConfig& c, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw ConfigError("cannot write " + c.out);
    f << text;
}

json read_json(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read " + path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string sci(double x)
{
    std::ostringstream os;
    os << std::setprecision(3) << std::scientific << x;
    return os.str();
}

// --- verify ---------------------------------------------------------------

int cmd_verify(const RunConfig& c)
{
    guard(c, true, true);
    if (c.numeric && c.n != 3) throw ConfigError("--numeric runs on branes in R^3 and needs --n 3");
    std::vector<CheckResult> checks;
    std::vector<double> seconds;
    auto run = [&](auto&& f) {
        auto t0 = std::chrono::steady_clock::now();
        checks.push_back(f());
        seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    };
    const int n = c.n, L = c.max_letters;
    run([&] { return check_d_squared(n, L); });
    run([&] { return check_relabel_equivariance(n, L, c.seed); });
    run([&] { return check_flatness(n, L); });
    run([&] { return check_cohomology(n, L); });
    if (L >= 2) run([&] { return check_reutenauer(n, 2, L); });
    run([&] { return check_ab_gamma(n, L); });
    run([&] { return check_sab_kernels(n, L); });
    run([&] { return check_crossed_module_cohomology(n, L); });
    run([&] { return check_cartesian_square(n, L); });
    run([&] { return check_quasi_isomorphism(n, L); });
    run([&] { return check_structure_constants(n, c.degree); });
    auto cc = extract_structure_constants(n, c.degree);
    run([&] { return check_crossed_laws(cc, c.seed, 100); });
    run([&] { return check_ncat_laws(cc, c.seed, 100); });
    if (c.numeric) {
        HolonomyEngine e(cc);
        run([&] { return check_signature_oracle(e, c.seed); });
        run([&] { return check_signature_exact(e, c.seed); });
        run([&] { return check_levy_area(e); });
        run([&] { return check_sampled_reparametrization(e); });
        run([&] { return check_boundary_identity(e, c.seed, c.tol); });
        run([&] { return check_order_bootstrap(e); });
        run([&] { return check_vertical_composition(e, c.seed, c.tol); });
        run([&] { return check_whiskering(e, c.seed, c.tol); });
        run([&] { return check_thin_homotopy(e, c.seed, c.tol); });
        if (c.degree >= 3) {
            HolonomyEngine e3(3, 3);
            run([&] { return check_cube(e3, 40); });
        }
        if (c.degree >= 4) run([&] { return check_cube_convergence(e, 40); });
    }
    int failures = 0;
    for (const auto& r : checks) failures += r.ok ? 0 : 1;

    std::ostringstream os;
    if (c.fmt() == "json") {
        json rep = json::array();
        for (std::size_t k = 0; k < checks.size(); ++k) {
            json j = check_to_json(checks[k]);
            j["seconds"] = seconds[k];
            rep.push_back(j);
        }
        json doc{{"n", n}, {"max_letters", L}, {"degree", c.degree}, {"seed", c.seed}, {"numeric", c.numeric},
                 {"checks", rep}, {"failures", failures}};
        os << doc.dump(2) << "\n";
    } else if (c.fmt() == "csv") {
        os << "name,ok,value,tol,seconds,detail\n";
        for (std::size_t k = 0; k < checks.size(); ++k) {
            const auto& r = checks[k];
            os << '"' << r.name << "\"," << (r.ok ? 1 : 0) << ',' << r.value << ',' << r.tol << ',' << seconds[k] << ",\""
               << r.detail << "\"\n";
        }
    } else {
        for (std::size_t k = 0; k < checks.size(); ++k) {
            const auto& r = checks[k];
            os << (r.ok ? "PASS  " : "FAIL  ") << r.name;
            if (r.tol > 0) os << "  residual " << sci(r.value) << " (tol " << sci(r.tol) << ")";
            os << "  [" << r.detail << "]  " << std::fixed << std::setprecision(2) << seconds[k] << "s\n";
            os.unsetf(std::ios::fixed);
        }
        os << failures << " failure(s) in " << checks.size() << " checks\n";
    }
    emit(c, os.str());
    return failures == 0 ? 0 : 1;
}

// --- dims -----------------------------------------------------------------

int cmd_dims(const RunConfig& c)
{
    guard(c, true, false);
    FreeDGLie f(c.n, c.max_letters);
    Semiabelianization sab(c.n);
    Abelianization ab(c.n);
    struct Row {
        int i, ell;
        long dim, ker, im, H, H_pred, sab_dim, sab_ker, sab_ker_pred, ab_dim, ab_pred;
    };
    std::vector<Row> rows;
    for (const auto& r : f.dims_report()) {
        Row x{r.i, r.ell, r.dim, r.ker, r.im, r.H, (r.i == 0 && r.ell == 1) ? c.n : 0, 0, 0, -1, 0, 0};
        const int m = -r.i;
        if (m < c.n) {
            auto s = sab.slice(r.i, r.ell);
            x.sab_dim = s.dim;
            x.sab_ker = m >= 1 ? sab.kernel_dimension(r.i, r.ell) : s.dim;
            if (m >= 1) x.sab_ker_pred = gamma_closed_dimension(m + 1, r.ell - 2, c.n);
            x.ab_dim = ab.slice(r.i, r.ell).dim;
        }
        x.ab_pred = m == 0 ? (r.ell >= 2 ? gamma_closed_dimension(1, r.ell - 2, c.n) : 0) : gamma_dimension(m + 1, r.ell - 1, c.n);
        rows.push_back(x);
    }
    const char* names[] = {"i", "ell", "dim", "ker", "im", "H", "H_pred", "sab_dim", "sab_ker", "sab_ker_pred", "ab_dim", "ab_pred"};
    auto values = [](const Row& r) {
        return std::vector<long>{r.i, r.ell, r.dim, r.ker, r.im, r.H, r.H_pred, r.sab_dim, r.sab_ker, r.sab_ker_pred, r.ab_dim, r.ab_pred};
    };
    std::ostringstream os;
    if (c.fmt() == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json j;
            auto v = values(r);
            for (int k = 0; k < 12; ++k)
                if (!(k == 9 && v[k] < 0)) j[names[k]] = v[k];
            arr.push_back(j);
        }
        os << json{{"n", c.n}, {"max_letters", c.max_letters}, {"rows", arr}}.dump(2) << "\n";
    } else {
        const bool csv = c.fmt() == "csv";
        for (int k = 0; k < 12; ++k) {
            if (csv)
                os << (k ? "," : "") << names[k];
            else
                os << (k ? " " : "") << std::setw(k < 2 ? 4 : 12) << names[k];
        }
        os << "\n";
        for (const auto& r : rows) {
            auto v = values(r);
            for (int k = 0; k < 12; ++k) {
                std::string cell = (k == 9 && v[k] < 0) ? "-" : std::to_string(v[k]);
                if (csv)
                    os << (k ? "," : "") << cell;
                else
                    os << (k ? " " : "") << std::setw(k < 2 ? 4 : 12) << cell;
            }
            os << "\n";
        }
    }
    emit(c, os.str());
    return 0;
}

// --- signatures and holonomies ----------------------------------------------

bool has_exact_coordinates(const json& j)
{
    for (const auto& p : j.at("points"))
        for (const auto& x : p)
            if (x.is_string()) return true;
    return false;
}

int cmd_sig(const RunConfig& c)
{
    guard(c, false, true);
    json in = read_json(c.input);
    json out;
    try {
        if (has_exact_coordinates(in)) {
            ExactPLPath g{in.at("n").get<int>(), {}};
            for (const auto& p : in.at("points")) {
                std::vector<Rational> q;
                for (const auto& x : p) q.push_back(rational_from_json(x));
                if (static_cast<int>(q.size()) != g.n) throw ConfigError("path JSON: point of the wrong dimension");
                g.points.push_back(q);
            }
            if (g.points.empty()) throw ConfigError("path JSON: no points");
            HolonomyEngine e(g.n, c.degree);
            out = json{{"exact", true}, {"signature", tensor_to_json(signature_tensor(g, c.degree))}};
            out["log"] = group_element_to_json(e.signature_pl(g));
            out["log"]["labels"] = e.complex().degrees[0].labels;
        } else {
            PLPath g = path_from_json(in);
            HolonomyEngine e(g.n, c.degree);
            out = json{{"exact", false}, {"signature", tensor_to_json(signature_tensor(g, c.degree))}};
            out["log"] = holonomy_result_to_json(HolonomyResult{c.degree, e.signature_pl(g), 0, {}}, e.complex());
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("path JSON: ") + e.what());
    }
    emit(c, out.dump(2) + "\n");
    return 0;
}

int cmd_hol(const RunConfig& c, int p_required)
{
    guard(c, false, true);
    SampledBrane b = brane_from_json(read_json(c.input));
    if (p_required == 2 && b.p != 2) throw ConfigError("hol2 expects a surface (p = 2)");
    if (p_required != 2 && b.p < 3) throw ConfigError("holp expects a brane with p >= 3");
    HolonomyEngine e(b.n, c.degree);
    HolonomyResult r = b.p == 2 ? e.holonomy2(b) : e.holonomy_p(b);
    emit(c, holonomy_result_to_json(r, e.complex()).dump(2) + "\n");
    return 0;
}

int cmd_export_cc(const RunConfig& c)
{
    guard(c, false, true);
    emit(c, crossed_complex_to_json(extract_structure_constants(c.n, c.degree)).dump(2) + "\n");
    return 0;
}

int cmd_import_cc(const RunConfig& c)
{
    json in = read_json(c.input);
    NilpotentCrossedComplex cc = crossed_complex_from_json(in);
    auto bad = cc.validate();
    const bool round_trip = crossed_complex_to_json(cc) == in;
    json out{{"n", cc.n}, {"degree", cc.cls}, {"dims", json::array()}, {"violations", bad}, {"round_trip", round_trip}};
    for (int k = 0; k <= cc.depth(); ++k) out["dims"].push_back(cc.dim(k));
    if (c.fmt() == "json") {
        emit(c, out.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "n=" << cc.n << " d=" << cc.cls << " dims " << out["dims"].dump() << "\n";
        for (const auto& m : bad) os << "violation: " << m << "\n";
        os << (bad.empty() ? "axioms hold" : "axioms violated") << ", round trip " << (round_trip ? "exact" : "differs") << "\n";
        emit(c, os.str());
    }
    return bad.empty() && round_trip ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"dglc: free dg-Lie algebras, crossed complexes and higher holonomy"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* s, bool letters, bool degree) {
        s->add_option("--n", cfg.n, "number of coordinate directions (1..6)")->capture_default_str();
        if (letters) s->add_option("--max-letters", cfg.max_letters, "letter-count truncation L (<= 8)")->capture_default_str();
        if (degree) s->add_option("--degree", cfg.degree, "nilpotency class d (<= 6)")->capture_default_str();
        s->add_option("--format", cfg.format, "json, csv or pretty")->capture_default_str();
        s->add_flag("--json", cfg.json_flag, "same as --format json");
        s->add_option("--out", cfg.out, "write the result to FILE");
    };

    auto* verify = app.add_subcommand("verify", "run the exact suite, and with --numeric the holonomy suite");
    common(verify, true, true);
    verify->add_option("--tol", cfg.tol, "tolerance for the 2-holonomy identities")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "seed of the randomized checks")->capture_default_str();
    verify->add_flag("--numeric", cfg.numeric, "also run the signature and holonomy checks (needs --n 3)");

    auto* dims = app.add_subcommand("dims", "dimension table of f, its semiabelianization and abelianization");
    common(dims, true, false);

    auto* sig = app.add_subcommand("sig", "signature of a piecewise-linear path");
    common(sig, false, true);
    sig->add_option("path", cfg.input, "path JSON")->required();

    auto* hol2 = app.add_subcommand("hol2", "2-holonomy of a sampled surface");
    common(hol2, false, true);
    hol2->add_option("surface", cfg.input, "surface JSON")->required();

    auto* holp = app.add_subcommand("holp", "p-holonomy of a sampled brane, p >= 3");
    common(holp, false, true);
    holp->add_option("brane", cfg.input, "brane JSON")->required();

    auto* exp = app.add_subcommand("export-cc", "structure constants of the nilpotent crossed complex");
    common(exp, false, true);

    auto* imp = app.add_subcommand("import-cc", "read structure constants, validate the axioms and the round trip");
    common(imp, false, false);
    imp->add_option("file", cfg.input, "crossed-complex JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify) return cmd_verify(cfg);
        if (*dims) return cmd_dims(cfg);
        if (*sig) return cmd_sig(cfg);
        if (*hol2) return cmd_hol(cfg, 2);
        if (*holp) return cmd_hol(cfg, 3);
        if (*exp) return cmd_export_cc(cfg);
        if (*imp) return cmd_import_cc(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

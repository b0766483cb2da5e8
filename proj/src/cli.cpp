#include "fauto/cli.hpp"

#include "fauto/analysis.hpp"
#include "fauto/errors.hpp"
#include "fauto/fixtures.hpp"
#include "fauto/growth.hpp"
#include "fauto/newton.hpp"
#include "fauto/resonance.hpp"
#include "fauto/solver.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace fauto {

namespace {

using json = nlohmann::json;

struct Config {
    std::string operator_file;
    std::string params_file;
    std::string fixture;
    std::string rhs_file;
    std::string solution_file;
    std::string out_dir;
    std::string grid = "256,256";
    std::string s;
    std::string alpha;
    int N = 16;
    int K = 16;
    int k_min = -1;
    int k_max = -1;
    int J = 3;
    unsigned long seed = 1;
    bool check_residual = false;
    bool N_set = false;
    bool K_set = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io_error", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const Config& cfg, const std::string& name, const std::string& content) {
    std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("io_error", "cannot write '" + (dir / name).string() + "'");
    out << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Fixture fixture_by_name(const std::string& name) {
    std::smatch m;
    if (name == "shrinking") return example_shrinking();
    if (name == "resonant") return resonant_toy();
    if (std::regex_match(name, m, std::regex("shrinking_(\\d+)_(\\d+)"))) {
        int mu = std::stoi(m[1]);
        int nu = std::stoi(m[2]);
        if (mu >= 2 && nu >= 1 && mu <= 64 && nu <= 64) return example_shrinking_family(mu, nu);
    }
    if (std::regex_match(name, m, std::regex("gevrey_h(\\d+)"))) {
        int h = std::stoi(m[1]);
        if (h >= 1 && h <= 64) return example_gevrey(1, 2, 3, 5, h);
    }
    if (std::regex_match(name, m, std::regex("random_(\\d+)"))) return random_automorphism(std::stoul(m[1]));
    throw Error("unknown_fixture", "unknown fixture '" + name + "'");
}

// '#' starts a comment that runs to the end of the line.
std::string strip_comments(const std::string& text) {
    std::string out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        out += line.substr(0, h);
        out += '\n';
    }
    return out;
}

Fixture load_operator(const Config& cfg) {
    if (!cfg.fixture.empty()) {
        if (!cfg.operator_file.empty()) throw Error("usage", "--fixture and --operator are exclusive");
        return fixture_by_name(cfg.fixture);
    }
    if (cfg.operator_file.empty()) throw Error("usage", "an operator is required (--operator FILE or --fixture NAME)");
    Fixture f;
    f.name = std::filesystem::path(cfg.operator_file).stem().string();
    f.source = strip_comments(read_file(cfg.operator_file));
    if (!cfg.params_file.empty()) {
        json j;
        try {
            j = json::parse(read_file(cfg.params_file));
        } catch (const json::parse_error& e) {
            throw Error("invalid_params", std::string("parameter file is not valid JSON: ") + e.what());
        }
        f.params = params_from_json(j);
    }
    return f;
}

std::optional<Rational> rational_flag(const std::string& v, const char* name) {
    if (v.empty()) return std::nullopt;
    try {
        return parse_rational(v);
    } catch (const std::invalid_argument&) {
        throw Error("usage", std::string("--") + name + " expects a rational number");
    }
}

CertifyOptions grid_options(const Config& cfg) {
    CertifyOptions o;
    std::smatch m;
    if (std::regex_match(cfg.grid, m, std::regex("\\s*(\\d+)\\s*(?:,\\s*(\\d+)\\s*)?"))) {
        o.grid_n = std::stol(m[1]);
        o.grid_k = m[2].matched ? std::stol(m[2]) : o.grid_n;
        return o;
    }
    throw Error("usage", "--grid expects N0 or N0,K0");
}

NormalOperator compile_padded(const Fixture& f, int N, int K) {
    auto [dq, dr] = derivative_degree(parse(f.source, f.params));
    return compile_operator(f.source, f.params, {N + dq, K + dr});
}

struct AnalyzeResult {
    json full;
    json summary;
};

AnalyzeResult analyze(const Fixture& f, const Config& cfg) {
    NormalOperator op = compile_operator(f.source, f.params, {cfg.N, cfg.K});
    json j;
    json verdicts;
    j["operator"] = f.source;
    j["truncation"] = {op.trunc.n, op.trunc.k};
    std::vector<std::string> warnings;
    int m = compute_m(op, &warnings);
    j["m"] = m;
    Analysis an;
    try {
        an = analyze_operator(op);
    } catch (const NegativeOrdinateError& e) {
        j["warnings"] = warnings;
        j["conditions"] = {{"a", {{"pass", false}, {"lower_ordinate", e.l()}}}};
        verdicts["a"] = "fail";
        verdicts["b"] = "not_checked";
        verdicts["c"] = "not_checked";
        j["verdicts"] = verdicts;
        j["corollary1"] = "not_applicable";
        return {j, {{"name", f.name}, {"m", m}, {"verdicts", verdicts}, {"corollary1", "not_applicable"}}};
    }
    j["warnings"] = an.warnings;
    j["theta"] = to_json(an.theta);

    std::optional<Rational> s_override = rational_flag(cfg.s, "s");
    std::optional<ExponentReport> ex;
    try {
        ex = exponents(an.theta, an.m, s_override);
        j["exponents"] = to_json(*ex);
    } catch (const Error& e) {
        if (e.code() != "no_j0_stratum") throw;
        j["exponents"] = nullptr;
        j["warnings"].push_back(e.what());
    }
    Rational s = ex ? ex->s : s_override.value_or(Rational(0));
    ConditionVerdict cv = check_conditions(an.theta, s);
    ResonanceCertificate cert = certify(IndicialPolynomial::from_theta(an.theta), grid_options(cfg));
    j["conditions"] = to_json(cv);
    j["certificate"] = to_json(cert);
    j["polygon"] = to_json(cv.generic);
    verdicts["a"] = cv.a_pass ? "pass" : "fail";
    verdicts["b"] = cv.b_pass ? "pass" : "fail";
    verdicts["c"] = to_string(cert.verdict);
    j["verdicts"] = verdicts;
    j["s"] = to_pq_string(s);
    j["alpha"] = ex ? json(to_pq_string(ex->alpha)) : json(nullptr);
    std::string cor = "not_applicable";
    if (ex && cv.a_pass && cv.b_pass && cert.verdict == Verdict::certified_strong) cor = ex->alpha == 0 ? "yes" : "no";
    j["corollary1"] = cor;

    json summary = {{"name", f.name},
                    {"m", an.m},
                    {"alpha", j["alpha"]},
                    {"s", j["s"]},
                    {"verdicts", verdicts},
                    {"C0", to_json(cert)["C0_lower_bound"]},
                    {"vertices", j["polygon"]["vertices"]},
                    {"corollary1", cor}};
    if (cert.witness) summary["witness"] = {cert.witness->first, cert.witness->second};
    AnalyzeResult r{j, summary};
    if (!cfg.out_dir.empty()) write_file(cfg, "polygon.svg", to_svg(cv.generic));
    return r;
}

int cmd_analyze(const Config& cfg, std::ostream& out) {
    AnalyzeResult r = analyze(load_operator(cfg), cfg);
    if (!cfg.out_dir.empty()) write_file(cfg, "analysis.json", dump(r.full));
    out << dump(r.full);
    return 0;
}

SeriesTZ default_rhs(Truncation t) {
    return SeriesTZ::generate(t, [](int n, int k) -> Rational { return k == 0 ? Rational(n + 1) : Rational(0); });
}

SeriesTZ read_table(const std::string& path, std::optional<Truncation> t) {
    std::string text = read_file(path);
    try {
        if (!t) {
            // Window from the largest indices present.
            Truncation m{0, 0};
            std::istringstream in(text);
            std::string line;
            bool first = true;
            while (std::getline(in, line)) {
                if (first && line.rfind("n,k", 0) == 0) {
                    first = false;
                    continue;
                }
                first = false;
                if (line.empty() || line == "\r") continue;
                std::istringstream ls(line);
                std::string a, b;
                std::getline(ls, a, ',');
                std::getline(ls, b, ',');
                m.n = std::max(m.n, std::stoi(a));
                m.k = std::max(m.k, std::stoi(b));
            }
            t = m;
        }
        std::istringstream in(text);
        return read_csv(in, *t);
    } catch (const std::invalid_argument& e) {
        throw Error("invalid_csv", "'" + path + "': " + e.what());
    } catch (const std::out_of_range& e) {
        throw Error("invalid_csv", "'" + path + "': value out of range");
    }
}

int cmd_solve(const Config& cfg, std::ostream& out) {
    Fixture f = load_operator(cfg);
    Truncation t{cfg.N, cfg.K};
    SeriesTZ g = cfg.rhs_file.empty() ? default_rhs(t) : read_table(cfg.rhs_file, t);
    NormalOperator op = compile_padded(f, cfg.N, cfg.K);
    int m = compute_m(op);
    SolutionTable s = solve_full(op, m, g, {cfg.check_residual});
    json summary = summary_json(s);
    summary["m"] = m;
    summary["operator"] = f.source;
    summary["rhs"] = cfg.rhs_file.empty() ? "sum (n+1) t^n" : cfg.rhs_file;
    summary["resonance_witnesses"] = json::array();
    if (cfg.out_dir.empty()) {
        out << to_csv(s);
        return 0;
    }
    write_file(cfg, "solution.csv", to_csv(s));
    write_file(cfg, "solve.json", dump(summary));
    out << dump(summary);
    return 0;
}

int cmd_fit(const Config& cfg, std::ostream& out) {
    if (cfg.solution_file.empty()) throw Error("usage", "fit needs --solution FILE (a CSV written by solve)");
    std::optional<Truncation> t;
    if (cfg.N_set && cfg.K_set) t = Truncation{cfg.N, cfg.K};
    SeriesTZ u = read_table(cfg.solution_file, t);
    Rational s = rational_flag(cfg.s, "s").value_or(Rational(0));
    std::optional<Rational> alpha = rational_flag(cfg.alpha, "alpha");
    if (!alpha && (!cfg.fixture.empty() || !cfg.operator_file.empty())) {
        Fixture f = load_operator(cfg);
        Analysis an = analyze_operator(compile_operator(f.source, f.params, {16, 16}));
        alpha = exponents(an.theta, an.m).alpha;
    }
    std::optional<Window> w;
    if (cfg.k_min >= 0 || cfg.k_max >= 0) {
        Window d = default_window(u.truncation().k);
        w = Window{cfg.k_min >= 0 ? cfg.k_min : d.k_min, cfg.k_max >= 0 ? cfg.k_max : d.k_max};
    }
    GrowthReport rep = analyze_growth(u, s, alpha.value_or(Rational(0)), w);
    json j = to_json(rep);
    j["s"] = to_pq_string(s);
    j["alpha_for_bounds"] = to_pq_string(alpha.value_or(Rational(0)));
    j["table"] = {u.truncation().n, u.truncation().k};
    if (!cfg.out_dir.empty()) {
        write_file(cfg, "growth.json", dump(j));
        write_file(cfg, "radii.csv", radii_csv(rep));
        write_file(cfg, "radii.svg", radii_svg(rep));
    }
    out << dump(j);
    return 0;
}

int cmd_sharpness(const Config& cfg, std::ostream& out) {
    Fixture f = load_operator(cfg);
    int N = cfg.N_set ? cfg.N : 16;
    int K = cfg.K_set ? cfg.K : 64;
    NormalOperator op = compile_padded(f, std::max(N, 8), K);
    Analysis an = analyze_operator(op);
    ExponentReport ex = exponents(an.theta, an.m, rational_flag(cfg.s, "s"));
    json rows = json::array();
    json notes = json::array();
    std::map<long, double> radii;
    bool bound_ok = true;
    SeriesTZ table({N, K});
    std::vector<Rational> flat(static_cast<std::size_t>(N + 1) * static_cast<std::size_t>(K + 1), Rational(0));
    int i_star = 0;
    int j_star = 0;
    for (long n = 1; n <= N; ++n) {
        AdversarialPair a;
        try {
            a = adversarial(an.theta, ex, n, K);
        } catch (const Error& e) {
            if (e.code() != "n_too_small") throw;
            notes.push_back("n = " + std::to_string(n) + ": " + e.what());
            continue;
        }
        i_star = a.i_star;
        j_star = a.j_star;
        bool ok = true;
        for (double r : adversarial_log_ratios(a, ex))
            if (!std::isfinite(r) || r < a.log_C - 1e-12) ok = false;
        bound_ok = bound_ok && ok && std::isfinite(a.log_C);
        for (int k = 0; k <= K; ++k)
            flat[static_cast<std::size_t>(n) * static_cast<std::size_t>(K + 1) + static_cast<std::size_t>(k)] = a.u[k];
        try {
            radii[n] = radius_estimate(a.u, ex.s, default_window(K));
        } catch (const Error& e) {
            notes.push_back("n = " + std::to_string(n) + ": " + e.what());
        }
        rows.push_back({{"n", n}, {"log_C", a.log_C}, {"D", a.D}, {"D_pow_j_star", to_pq_string(a.D_pow)}, {"lower_bound", ok}});
    }
    table = SeriesTZ({N, K}, std::move(flat));
    json j;
    j["operator"] = f.source;
    j["alpha"] = to_pq_string(ex.alpha);
    j["s"] = to_pq_string(ex.s);
    j["i_star"] = i_star;
    j["j_star"] = j_star;
    j["rows"] = rows;
    j["lower_bound_verified"] = bound_ok && !rows.empty();
    std::optional<AlphaFit> fit;
    if (radii.size() >= 8) fit = fit_alpha(radii);
    j["alpha_hat"] = fit ? json(fit->alpha_hat) : json(nullptr);
    bool sharp = fit && fit->alpha_hat >= ex.alpha.get_d() - 0.1;
    j["alpha_recovered"] = sharp;
    j["pass"] = sharp && bound_ok && !rows.empty();
    j["notes"] = notes;
    if (!cfg.out_dir.empty()) {
        write_file(cfg, "sharpness.json", dump(j));
        write_file(cfg, "adversarial.csv", to_csv(table));
    }
    out << dump(j);
    return 0;
}

int cmd_liouville(const Config& cfg, std::ostream& out) {
    long N = cfg.N_set ? cfg.N : 1000;
    long K = cfg.K_set ? cfg.K : 1000;
    LiouvilleReport r = liouville_demo(cfg.J, N, K);
    if (cfg.out_dir.empty()) {
        out << liouville_csv(r);
        return 0;
    }
    json j = to_json(r);
    j["J"] = cfg.J;
    j["search"] = {N, K};
    write_file(cfg, "liouville.csv", liouville_csv(r));
    write_file(cfg, "liouville.json", dump(j));
    out << dump(j);
    return 0;
}

int cmd_demo(const Config& cfg, std::ostream& out) {
    std::vector<Fixture> fx = builtin_fixtures();
    fx.push_back(random_automorphism(cfg.seed));
    json runs = json::array();
    Config quiet = cfg;
    quiet.out_dir.clear();
    for (const auto& f : fx) runs.push_back(analyze(f, quiet).summary);
    json j = {{"seed", cfg.seed}, {"runs", runs}};
    if (!cfg.out_dir.empty()) write_file(cfg, "demo.json", dump(j));
    out << dump(j);
    return 0;
}

json error_object(const std::string& code, const std::string& message) {
    return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Formal solutions of P(dt,dz) dt^-m u = g on shrinking discs", "fauto"};
    app.fallthrough();
    app.require_subcommand(1);
    Config cfg;
    app.set_config("--config", "", "flat key = value file with option defaults");
    app.add_option("--operator", cfg.operator_file, "operator source file");
    app.add_option("--params", cfg.params_file, "JSON sidecar with the series parameters");
    app.add_option("--fixture", cfg.fixture,
                   "built-in operator: shrinking, shrinking_MU_NU, gevrey_hH, resonant, random_SEED");
    app.add_option("--rhs", cfg.rhs_file, "right side as CSV n,k,numerator,denominator (default sum (n+1) t^n)");
    app.add_option("--solution", cfg.solution_file, "solution CSV written by solve");
    app.add_option("--out-dir", cfg.out_dir, "directory for JSON/CSV/SVG artifacts");
    app.add_option("--grid", cfg.grid, "certificate grid N0[,K0]")->capture_default_str();
    app.add_option("--s", cfg.s, "override of the Gevrey index s");
    app.add_option("--alpha", cfg.alpha, "alpha used for the bound constants in fit");
    auto* optN = app.add_option("--N", cfg.N, "truncation in t")->capture_default_str();
    auto* optK = app.add_option("--K", cfg.K, "truncation in z")->capture_default_str();
    app.add_option("--k-min", cfg.k_min, "regression window start (default K/2)");
    app.add_option("--k-max", cfg.k_max, "regression window end (default K)");
    app.add_option("--J", cfg.J, "number of terms of the Liouville sum")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed of the random operator in demo")->capture_default_str();
    app.add_flag("--check-residual", cfg.check_residual, "verify P dt^-m u = g exactly after solving");
    bool print_config = false;
    app.add_flag("--print-config", print_config, "print the effective configuration and exit")->configurable(false);

    auto* analyze_cmd = app.add_subcommand("analyze", "conditions, exponents, polygon and resonance certificate");
    auto* solve_cmd = app.add_subcommand("solve", "solve P dt^-m u = g by coefficient matching");
    auto* fit_cmd = app.add_subcommand("fit", "radius and Gevrey fits on a solution table");
    auto* sharp_cmd = app.add_subcommand("sharpness", "adversarial right sides and the recovered alpha");
    auto* liou_cmd = app.add_subcommand("liouville", "near resonances of x - lambda (y+1)");
    auto* demo_cmd = app.add_subcommand("demo", "analyze every built-in fixture");

    std::vector<std::string> argv_store{"fauto"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (print_config && e.get_exit_code() == static_cast<int>(CLI::ExitCodes::RequiredError)) {
            out << app.config_to_str(true, false);
            return 0;
        }
        err << error_object("usage", e.what()).dump() << "\n";
        return 2;
    }
    if (print_config) {
        out << app.config_to_str(true, false);
        return 0;
    }
    cfg.N_set = optN->count() > 0;
    cfg.K_set = optK->count() > 0;
    if (!cfg.N_set && !cfg.K_set) {
        // values read from --config count as set
        cfg.N_set = cfg.N != 16;
        cfg.K_set = cfg.K != 16;
    }

    try {
        if (cfg.N < 0 || cfg.K < 0) throw Error("usage", "--N and --K must be nonnegative");
        if (analyze_cmd->parsed()) return cmd_analyze(cfg, out);
        if (solve_cmd->parsed()) return cmd_solve(cfg, out);
        if (fit_cmd->parsed()) return cmd_fit(cfg, out);
        if (sharp_cmd->parsed()) return cmd_sharpness(cfg, out);
        if (liou_cmd->parsed()) return cmd_liouville(cfg, out);
        if (demo_cmd->parsed()) return cmd_demo(cfg, out);
    } catch (const ParseError& e) {
        json j = error_object(e.code(), e.what());
        j["error"]["line"] = e.line();
        j["error"]["column"] = e.column();
        err << j.dump() << "\n";
        return 1;
    } catch (const ResonanceError& e) {
        json j = error_object(e.code(), e.what());
        j["error"]["witness"] = {e.n(), e.k()};
        err << j.dump() << "\n";
        return 1;
    } catch (const ConditionError& e) {
        json j = error_object(e.code(), e.what());
        j["error"]["condition"] = std::string(1, e.condition());
        j["error"]["n"] = e.n();
        err << j.dump() << "\n";
        return 1;
    } catch (const Error& e) {
        err << error_object(e.code(), e.what()).dump() << "\n";
        return e.code() == "usage" ? 2 : 1;
    } catch (const std::exception& e) {
        err << error_object("internal", e.what()).dump() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace fauto

// qherm command-line front end: tables, kernel grids, verification suites, coherent states.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qherm/coherent.hpp"
#include "qherm/hermite.hpp"
#include "qherm/io.hpp"
#include "qherm/kernels.hpp"
#include "qherm/parallel.hpp"
#include "qherm/verify.hpp"

using namespace qherm;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::uint64_t seed = 1;
    std::string output;  // csv | json; empty picks the subcommand default
    std::string out_path;

    double s = 0.5;
    std::optional<unsigned> max_n;
    std::size_t planar_order = default_planar_order;
    std::size_t gauss_order = 40;
    std::size_t su2_order = 8;
    std::map<std::string, double> tolerances;

    // hermite-table
    std::string family = "hnm";
    unsigned max = 3;

    // kernel-grid
    std::string kernel = "Ks";
    unsigned grid = 11;
    double range = 1.5;
    unsigned level = 0;

    // verify
    std::vector<std::string> suites;
    bool list = false;

    // cs
    std::string action;
    std::string cs_family = "canonical";
    std::string q = "0.3,0.1,-0.2,0.4";
    std::string q2 = "-0.5,0.7,0,0.2";
    std::size_t terms = default_cs_terms;
    std::size_t basis = 6;
};

Quaternion parse_quaternion(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    ss.imbue(std::locale::classic());
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::istringstream is(item);
        is.imbue(std::locale::classic());
        double x = 0.0;
        if (!(is >> x) || !(is >> std::ws).eof()) throw UsageError("bad quaternion component '" + item + "'");
        v.push_back(x);
    }
    if (v.size() != 4) throw UsageError("quaternion needs 4 comma-separated components: '" + text + "'");
    return {v[0], v[1], v[2], v[3]};
}

std::string quaternion_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    const auto q = j.get<Quaternion>();
    return format_double(q.x0) + "," + format_double(q.x1) + "," + format_double(q.x2) + "," + format_double(q.x3);
}

/// Returns the --config path from argv, if any, without full parsing.
std::string prescan_config(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

/// Config values become the starting values of the bound variables; flags parsed later overwrite them.
void apply_config(const Json& cfg, Options& o) {
    if (!cfg.is_object()) throw UsageError("config must be a JSON object");
    const std::map<std::string, std::function<void(const Json&)>> setters{
        {"seed", [&](const Json& v) { o.seed = v.get<std::uint64_t>(); }},
        {"output", [&](const Json& v) { o.output = v.get<std::string>(); }},
        {"out", [&](const Json& v) { o.out_path = v.get<std::string>(); }},
        {"s", [&](const Json& v) { o.s = v.get<double>(); }},
        {"max-n", [&](const Json& v) { o.max_n = v.get<unsigned>(); }},
        {"planar-order", [&](const Json& v) { o.planar_order = v.get<std::size_t>(); }},
        {"gauss-order", [&](const Json& v) { o.gauss_order = v.get<std::size_t>(); }},
        {"su2-order", [&](const Json& v) { o.su2_order = v.get<std::size_t>(); }},
        {"tolerances", [&](const Json& v) { o.tolerances = v.get<std::map<std::string, double>>(); }},
        {"family", [&](const Json& v) { o.family = o.cs_family = v.get<std::string>(); }},
        {"max", [&](const Json& v) { o.max = v.get<unsigned>(); }},
        {"kernel", [&](const Json& v) { o.kernel = v.get<std::string>(); }},
        {"grid", [&](const Json& v) { o.grid = v.get<unsigned>(); }},
        {"range", [&](const Json& v) { o.range = v.get<double>(); }},
        {"n", [&](const Json& v) { o.level = v.get<unsigned>(); }},
        {"suite", [&](const Json& v) {
             o.suites = v.is_array() ? v.get<std::vector<std::string>>() : std::vector{v.get<std::string>()};
         }},
        {"q", [&](const Json& v) { o.q = quaternion_text(v); }},
        {"q2", [&](const Json& v) { o.q2 = quaternion_text(v); }},
        {"terms", [&](const Json& v) { o.terms = v.get<std::size_t>(); }},
        {"basis", [&](const Json& v) { o.basis = v.get<std::size_t>(); }},
    };
    for (const auto& [key, value] : cfg.items()) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw UsageError("unknown config key '" + key + "'");
        try {
            it->second(value);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config key '" + key + "': " + e.what());
        }
    }
}

void check_config(const Options& o) {
    if (!(o.s > 0.0 && o.s < 1.0)) throw UsageError("s must lie in (0, 1)");
    if (o.planar_order < 2 || o.gauss_order < 2 || o.su2_order < 2) throw UsageError("quadrature orders must be >= 2");
    for (const auto& [name, t] : o.tolerances)
        if (!(t > 0.0)) throw UsageError("tolerance '" + name + "' must be positive");
    if (!o.output.empty() && o.output != "csv" && o.output != "json") throw UsageError("--output must be csv or json");
}

Json base_report(const std::string& command, const Options& o) {
    return Json{{"schema", 1},
                {"command", command},
                {"config",
                 {{"seed", o.seed},
                  {"s", o.s},
                  {"max_n", o.max_n ? Json(*o.max_n) : Json(nullptr)},
                  {"planar_order", o.planar_order},
                  {"gauss_order", o.gauss_order},
                  {"su2_order", o.su2_order},
                  {"tolerances", o.tolerances}}}};
}

/// Writes the artifact and the report. A JSON artifact is the report itself; a CSV artifact
/// goes to --out (or stdout) and the report then goes to stdout (or stderr).
class Sink {
public:
    Sink(const Options& o, std::string default_format) : o_(o), format_(o.output.empty() ? default_format : o.output) {
        if (!o.out_path.empty()) {
            file_.open(o.out_path, std::ios::binary);
            if (!file_) throw UsageError("cannot open '" + o.out_path + "' for writing");
        }
    }

    [[nodiscard]] bool csv() const { return format_ == "csv"; }
    std::ostream& artifact() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

    void report(const Json& j) {
        const std::string text = j.dump(2) + "\n";
        std::ostream& os = !csv() ? artifact() : (file_.is_open() ? std::cout : std::cerr);
        os << text;
        os.flush();
    }

private:
    const Options& o_;
    std::string format_;
    std::ofstream file_;
};

// ---------------------------------------------------------------------------

int run_hermite_table(const Options& o) {
    Sink sink(o, "csv");
    Json report = base_report("hermite-table", o);
    report["family"] = o.family;
    report["max"] = o.max;

    struct Row {
        unsigned n, m, i, j;
        std::string coeff;
    };
    std::vector<Row> rows;
    if (o.family == "real") {
        for (unsigned n = 0; n <= o.max; ++n) {
            const IntPoly1 p = hermite_real(n);
            for (unsigned i = 0; i < p.coeffs().size(); ++i)
                if (p.coeffs()[i] != 0) rows.push_back({n, 0, i, 0, p.coeffs()[i].str()});
        }
    } else if (o.family == "hnm" || o.family == "Hnm") {
        for (unsigned n = 0; n <= o.max; ++n) {
            for (unsigned m = 0; m <= o.max; ++m) {
                const ZZbarPoly p = o.family == "hnm" ? h_nm_poly(n, m) : H_nm_poly(n, m);
                for (const auto& [e, c] : p.terms()) rows.push_back({n, m, e.first, e.second, c.str()});
            }
        }
    } else {
        throw UsageError("--family must be real, hnm or Hnm");
    }

    if (sink.csv()) {
        CsvWriter w(sink.artifact());
        w.header({"n", "m", "i", "j", "coeff"});
        for (const Row& r : rows) w.row(r.n, r.m, r.i, r.j, r.coeff);
        report["rows"] = rows.size();
    } else {
        Json data = Json::array();
        for (const Row& r : rows) data.push_back(Json{{"n", r.n}, {"m", r.m}, {"i", r.i}, {"j", r.j}, {"coeff", r.coeff}});
        report["terms"] = std::move(data);
    }
    report["pass"] = true;
    sink.report(report);
    return exit_ok;
}

int run_kernel_grid(const Options& o) {
    if (o.grid < 1) throw UsageError("--grid must be >= 1");
    if (!(o.range > 0.0)) throw UsageError("--range must be positive");
    std::function<KernelValue(const Quaternion&)> kernel;
    std::function<double(const Quaternion&)> closed;
    if (o.kernel == "Ks") {
        kernel = [&](const Quaternion& q) { return K_s_series(q, q, o.s); };
        closed = [&](const Quaternion& q) { return K_s_diag(q, o.s); };
    } else if (o.kernel == "K0") {
        kernel = [](const Quaternion& q) { return bargmann_kernel(q, q); };
        closed = [](const Quaternion& q) { return std::exp(norm2(q)); };
    } else if (o.kernel == "Kn") {
        kernel = [&](const Quaternion& q) { return K_n_series(q, q, o.level); };
        closed = [](const Quaternion& q) { return std::exp(norm2(q)); };
    } else {
        throw UsageError("--kernel must be Ks, K0 or Kn");
    }

    const std::size_t G = o.grid;
    const std::size_t count = G * G * G * G;
    const auto coord = [&](std::size_t k) { return G == 1 ? 0.0 : -o.range + 2.0 * o.range * k / (G - 1); };
    std::vector<Quaternion> nodes(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t r = idx;
        const std::size_t a3 = r % G; r /= G;
        const std::size_t a2 = r % G; r /= G;
        const std::size_t a1 = r % G; r /= G;
        nodes[idx] = {coord(r), coord(a1), coord(a2), coord(a3)};
    }
    std::vector<KernelValue> values(count);
    std::vector<double> reference(count);
    parallel_for(count, [&](std::size_t i) {
        values[i] = kernel(nodes[i]);
        reference[i] = closed(nodes[i]);
    });

    Sink sink(o, "csv");
    Json report = base_report("kernel-grid", o);
    report["kernel"] = o.kernel;
    report["grid"] = o.grid;
    report["range"] = o.range;
    if (o.kernel == "Kn") report["n"] = o.level;

    double worst = 0.0;
    bool all_converged = true;
    for (std::size_t i = 0; i < count; ++i) {
        worst = std::max(worst, std::abs(values[i].value.x0 - reference[i]) / reference[i]);
        all_converged = all_converged && values[i].converged;
    }
    if (sink.csv()) {
        CsvWriter w(sink.artifact());
        w.header({"x0", "x1", "x2", "x3", "re00", "im00", "re01", "im01", "re10", "im10", "re11", "im11", "closed"});
        for (std::size_t i = 0; i < count; ++i) {
            const Quaternion& q = nodes[i];
            const Mat2 m = to_matrix(values[i].value);
            w.row(q.x0, q.x1, q.x2, q.x3, m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag(),
                  m(1, 0).real(), m(1, 0).imag(), m(1, 1).real(), m(1, 1).imag(), reference[i]);
        }
    } else {
        Json pts = Json::array();
        for (std::size_t i = 0; i < count; ++i)
            pts.push_back(Json{{"q", nodes[i]}, {"value", values[i].value}, {"closed", reference[i]}});
        report["points"] = std::move(pts);
    }
    report["count"] = count;
    report["max_rel_diff_closed"] = worst;
    report["converged"] = all_converged;
    report["pass"] = all_converged;
    sink.report(report);
    return all_converged ? exit_ok : exit_fail;
}

int run_verify(const Options& o) {
    Sink sink(o, "json");
    if (o.list) {
        Json report{{"schema", 1}, {"command", "verify"}, {"suites", Json::array()}};
        for (const auto& s : suites()) report["suites"].push_back(Json{{"name", s.name}, {"criteria", s.criteria}});
        if (sink.csv()) {
            CsvWriter w(sink.artifact());
            w.header({"suite", "criteria"});
            for (const auto& s : suites()) {
                std::string c;
                for (unsigned k : s.criteria) c += (c.empty() ? "" : ";") + std::to_string(k);
                w.row(s.name, c);
            }
        }
        sink.report(report);
        return exit_ok;
    }

    std::vector<const SuiteInfo*> chosen;
    if (o.suites.empty()) {
        for (const auto& s : suites()) chosen.push_back(&s);
    } else {
        for (const auto& name : o.suites) {
            const SuiteInfo* s = find_suite(name);
            if (!s) throw UsageError("unknown suite '" + name + "' (see verify --list)");
            chosen.push_back(s);
        }
    }

    VerifyConfig cfg;
    cfg.s = o.s;
    cfg.seed = o.seed;
    cfg.max_n = o.max_n;
    cfg.planar_order = o.planar_order;
    cfg.gauss_order = o.gauss_order;
    cfg.su2_order = o.su2_order;
    cfg.tolerances = o.tolerances;

    Json report = base_report("verify", o);
    report["suites"] = Json::array();
    bool all = true;
    std::vector<SuiteResult> results;
    for (const SuiteInfo* s : chosen) {
        results.push_back(s->run(cfg));
        all = all && results.back().passed();
        report["suites"].push_back(results.back());
        if (!results.back().passed()) std::cerr << "suite " << s->name << ": FAIL\n";
    }
    report["pass"] = all;
    if (sink.csv()) {
        CsvWriter w(sink.artifact());
        w.header({"suite", "check", "criterion", "value", "tolerance", "pass"});
        for (const auto& r : results)
            for (const auto& c : r.checks) w.row(r.suite, c.name, c.criterion, c.value, c.tolerance, c.pass ? "true" : "false");
    }
    sink.report(report);
    return all ? exit_ok : exit_fail;
}

FrameFunctions parse_family(const Options& o) {
    if (o.cs_family == "canonical") return FrameFunctions::canonical();
    if (o.cs_family == "canonical-conjugate") return FrameFunctions::canonical(true);
    if (o.cs_family == "hermite-s") return FrameFunctions::hermite_s(o.s);
    if (o.cs_family == "hermite-nm") return FrameFunctions::hermite_nm(o.level);
    throw UsageError("--family must be canonical, canonical-conjugate, hermite-s or hermite-nm");
}

int run_cs(const Options& o) {
    const FrameFunctions fam = parse_family(o);
    Sink sink(o, "json");
    Json report = base_report("cs", o);
    report["action"] = o.action;
    report["family"] = fam.name();
    bool pass = true;

    if (o.action == "build") {
        const CSVector v = cs_build(fam, parse_quaternion(o.q), o.terms);
        report["q"] = v.q;
        report["norm_factor"] = v.norm_factor;
        report["tail"] = v.tail;
        report["coeffs"] = v.coeffs;
        if (sink.csv()) {
            CsvWriter w(sink.artifact());
            w.header({"m", "x0", "x1", "x2", "x3"});
            for (std::size_t m = 0; m < v.coeffs.size(); ++m)
                w.row(m, v.coeffs[m].x0, v.coeffs[m].x1, v.coeffs[m].x2, v.coeffs[m].x3);
        }
    } else if (o.action == "overlap") {
        const CSVector a = cs_build(fam, parse_quaternion(o.q), o.terms);
        const CSVector b = cs_build(fam, parse_quaternion(o.q2), o.terms);
        const Quaternion ov = overlap(a, b);
        report["q"] = a.q;
        report["q2"] = b.q;
        report["overlap"] = ov;
        report["kernel"] = std::sqrt(a.norm_factor * b.norm_factor) * ov;
        if (sink.csv()) {
            CsvWriter w(sink.artifact());
            w.header({"x0", "x1", "x2", "x3"});
            w.row(ov.x0, ov.x1, ov.x2, ov.x3);
        }
    } else if (o.action == "resolve") {
        const ResolutionReport r = resolution_of_identity(fam, fam.default_spec(), o.basis);
        const double tol = o.tolerances.count("resolution") ? o.tolerances.at("resolution") : 1e-6;
        pass = r.max_deviation <= tol;
        report["basis"] = o.basis;
        report["max_deviation"] = r.max_deviation;
        report["tolerance"] = tol;
        report["gram"] = r.gram;
        if (sink.csv()) {
            CsvWriter w(sink.artifact());
            w.header({"i", "j", "x0", "x1", "x2", "x3"});
            for (std::size_t i = 0; i < o.basis; ++i)
                for (std::size_t j = 0; j < o.basis; ++j) {
                    const Quaternion& g = r.gram[i * o.basis + j];
                    w.row(i, j, g.x0, g.x1, g.x2, g.x3);
                }
        }
    } else {
        throw UsageError("cs action must be build, overlap or resolve");
    }
    report["pass"] = pass;
    sink.report(report);
    return pass ? exit_ok : exit_fail;
}

void emit_error(const std::string& command, const std::string& kind, const std::string& message) {
    std::cerr << "qherm: " << message << "\n";
    const Json report{{"schema", 1}, {"command", command}, {"pass", false}, {"error", {{"kind", kind}, {"message", message}}}};
    std::cout << report.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Quaternionic Hermite polynomials, kernels and coherent states"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON file of defaults; flags override it");
        sub->add_option("--seed", o.seed, "Random seed");
        sub->add_option("--output", o.output, "csv or json");
        sub->add_option("--out", o.out_path, "Artifact path (default stdout)");
        sub->add_option("--s", o.s, "Parameter s in (0, 1)");
    };

    auto* table = app.add_subcommand("hermite-table", "Exact polynomial coefficients");
    common(table);
    table->add_option("--family", o.family, "real, hnm or Hnm");
    table->add_option("--max", o.max, "Largest index");

    auto* grid = app.add_subcommand("kernel-grid", "Kernel diagonal on a 4-d grid");
    common(grid);
    grid->add_option("--kernel", o.kernel, "Ks, K0 or Kn");
    grid->add_option("--grid", o.grid, "Points per axis");
    grid->add_option("--range", o.range, "Grid covers [-range, range] per axis");
    grid->add_option("--n", o.level, "Level for Kn");

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    common(verify);
    verify->add_option("--suite", o.suites, "Suite name (repeatable; default all)");
    verify->add_flag("--list", o.list, "List suites and exit");
    verify->add_option("--max-n", o.max_n, "Override each suite's index range");
    verify->add_option("--planar-order", o.planar_order, "Gauss-Hermite order per axis for the s-measures");
    verify->add_option("--gauss-order", o.gauss_order, "Gauss-Hermite order per axis for the Gaussian measure");
    verify->add_option("--su2-order", o.su2_order, "SU(2) rule order per angle");

    auto* cs = app.add_subcommand("cs", "Coherent states");
    common(cs);
    cs->add_option("action", o.action, "build, overlap or resolve")->required();
    cs->add_option("--family", o.cs_family, "canonical, canonical-conjugate, hermite-s or hermite-nm");
    cs->add_option("--n", o.level, "Level for hermite-nm");
    cs->add_option("--q", o.q, "Point as x0,x1,x2,x3");
    cs->add_option("--q2", o.q2, "Second point for overlap");
    cs->add_option("--terms", o.terms, "Truncation M");
    cs->add_option("--basis", o.basis, "Basis size for resolve");

    std::string command = "qherm";
    try {
        if (const std::string path = prescan_config(argc, argv); !path.empty()) {
            std::ifstream in(path);
            if (!in) throw UsageError("cannot read config '" + path + "'");
            Json cfg;
            try {
                cfg = Json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw UsageError(std::string("config is not valid JSON: ") + e.what());
            }
            apply_config(cfg, o);
        }
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            throw UsageError(e.what());
        }
        command = app.get_subcommands().front()->get_name();
        check_config(o);

        if (command == "hermite-table") return run_hermite_table(o);
        if (command == "kernel-grid") return run_kernel_grid(o);
        if (command == "verify") return run_verify(o);
        return run_cs(o);
    } catch (const UsageError& e) {
        emit_error(command, "usage", e.what());
        return exit_usage;
    } catch (const DomainError& e) {
        emit_error(command, "usage", e.what());
        return exit_usage;
    } catch (const std::exception& e) {
        emit_error(command, "failure", e.what());
        return exit_fail;
    }
}

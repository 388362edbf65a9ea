#include "app.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "plr/error.hpp"
#include "plr/serialize.hpp"

#ifndef PLR_VERSION
#define PLR_VERSION "0.0.0"
#endif

namespace plr {

namespace {

// Effective configuration after file load and flag overrides. Field names
// follow the JSON schema in the README.
struct RunConfig {
    json raw;
    BranchData branch;
    Divisor divisor;
    std::string lambda0 = "auto-critical:s";
    int root_index = -1;
    GridSpec grid;
    ClosureKind kind = ClosureKind::S;
    int index = 1;
    ClosureTolerances tol;
    std::string format = "csv";
    std::string output;
    int closure_samples = 64;
    // search family
    std::string vary = "im_lambda2";
    double lo = 0, hi = 0;
    double search_tol = 1e-9;
    Provenance prov;
};

constexpr const char* kUsage = "plr: genus-one finite-gap PLR solutions and Lund-Regge curves";

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); }

ClosureKind parse_kind(const std::string& s) {
    if (s == "s") return ClosureKind::S;
    if (s == "t") return ClosureKind::T;
    invalid("kind must be 's' or 't', got '" + s + "'");
}

cplx parse_complex_flag(const std::string& s) {
    double re = 0, im = 0;
    char comma = 0;
    std::istringstream in(s);
    if (!(in >> re >> comma >> im) || comma != ',') invalid("complex flag must be 're,im', got '" + s + "'");
    return {re, im};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot read config '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        invalid("config '" + path + "' is not valid JSON: " + e.what());
    }
}

RunConfig resolve(json raw) {
    RunConfig c;
    try {
        if (!raw.contains("branch")) invalid("config needs branch.lambda1 and branch.lambda2");
        c.branch = {complex_from_json(raw["branch"].at("lambda1")), complex_from_json(raw["branch"].at("lambda2"))};
        if (raw.contains("divisor")) {
            c.divisor.epsilon = raw["divisor"].value("epsilon", 0);
            c.divisor.y = raw["divisor"].value("y", 0.0);
        }
        if (raw.contains("lambda0")) {
            const json& l = raw["lambda0"];
            c.lambda0 = l.is_number() ? format_number(l.get<double>()) : l.get<std::string>();
        }
        c.root_index = raw.value("root_index", -1);
        if (raw.contains("grid")) {
            const json& g = raw["grid"];
            if (g.contains("s")) c.grid.s0 = g["s"].at(0), c.grid.s1 = g["s"].at(1);
            if (g.contains("t")) c.grid.t0 = g["t"].at(0), c.grid.t1 = g["t"].at(1);
            c.grid.ns = g.value("ns", c.grid.ns);
            c.grid.nt = g.value("nt", c.grid.nt);
        }
        c.kind = parse_kind(raw.value("kind", std::string("s")));
        c.index = raw.value("index", 1);
        if (raw.contains("tolerances")) {
            c.tol.critical = raw["tolerances"].value("critical", c.tol.critical);
            c.tol.phase = raw["tolerances"].value("phase", c.tol.phase);
        }
        c.format = raw.value("format", c.format);
        c.output = raw.value("output", std::string());
        c.closure_samples = raw.value("closure_samples", c.closure_samples);
        if (raw.contains("search")) {
            const json& s = raw["search"];
            c.vary = s.value("vary", c.vary);
            c.lo = s.at("range").at(0);
            c.hi = s.at("range").at(1);
            c.search_tol = s.value("tol", c.search_tol);
        }
    } catch (const json::exception& e) {
        invalid(std::string("config: ") + e.what());
    }
    if (c.grid.ns < 1 || c.grid.nt < 1) invalid("grid steps must be >= 1");
    if (c.grid.ns > 1 && !(c.grid.s1 > c.grid.s0))
        invalid("grid s-range must be non-empty when ns >= 2");
    if (c.grid.nt > 1 && !(c.grid.t1 > c.grid.t0)) invalid("grid t-range must be non-empty when nt >= 2");
    if (c.format != "csv" && c.format != "json") invalid("format must be csv or json");
    if (c.index < 1) invalid("index must be >= 1");
    // The destination does not change the content, so it stays out of the hash.
    json hashed = raw;
    hashed.erase("output");
    c.prov = {PLR_VERSION, fnv1a64(hashed.dump())};
    c.raw = std::move(raw);
    return c;
}

double resolve_lambda0(const RunConfig& c, const SpectralData& d) {
    const std::string prefix = "auto-critical:";
    if (c.lambda0.rfind(prefix, 0) == 0) {
        ClosureKind k = parse_kind(c.lambda0.substr(prefix.size()));
        auto roots = critical_lambda(k, d);
        int n = int(roots.size());
        int i = c.root_index < 0 ? n + c.root_index : c.root_index;
        if (i < 0 || i >= n) invalid("root_index out of range for " + std::to_string(n) + " critical points");
        return roots[size_t(i)];
    }
    try {
        size_t used = 0;
        double v = std::stod(c.lambda0, &used);
        if (used != c.lambda0.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        invalid("lambda0 must be a number or auto-critical:s|t, got '" + c.lambda0 + "'");
    }
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.output.empty() || c.output == "-") {
        out << text;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, "cannot write '" + c.output + "'");
    f << text;
    f.flush();
    if (!f) throw Error(ErrorKind::IoError, "write failed for '" + c.output + "'");
}

json document(const RunConfig& c, const char* kind, const SpectralData* d = nullptr) {
    json j;
    j["provenance"] = provenance_json(c.prov);
    j["document"] = kind;
    if (d) j["spectral_hash"] = spectral_hash(*d);
    return j;
}

int cmd_spectral(const RunConfig& c, std::ostream& out) {
    SpectralData d = genus1_spectral(c.branch, c.divisor);
    json j = document(c, "spectral", &d);
    j["spectral"] = to_json(d);
    emit(c, j.dump(2) + "\n", out);
    return 0;
}

int cmd_curve(const RunConfig& c, std::ostream& out) {
    SpectralData d = genus1_spectral(c.branch, c.divisor);
    FieldContext ctx(d, resolve_lambda0(c, d));
    CurveGrid g = sample_curve(ctx, c.grid);
    double arclength = geometry_residuals(ctx, c.grid)[0].max_residual;
    cplx q00 = 2.0 * cplx(0, 1) * d.sqrt_beta() * theta1(d.D - d.r, cplx(d.tau, 0)) / theta1(d.D, cplx(d.tau, 0));
    if (c.format == "csv") {
        std::ostringstream s;
        write_csv(s, g, c.prov,
                  {"spectral_hash=" + spectral_hash(d), "Lambda0=" + format_number(ctx.Lambda0()), "arclength_residual=" + format_number(arclength),
                   "q00_closed_form=" + format_number(q00.real()) + "," + format_number(q00.imag())});
        emit(c, s.str(), out);
    } else {
        json j = document(c, "curve", &d);
        j["Lambda0"] = ctx.Lambda0();
        j["arclength_residual"] = arclength;
        j["q00_closed_form"] = to_json(q00);
        j["curve"] = to_json(g);
        emit(c, j.dump(2) + "\n", out);
    }
    return 0;
}

int cmd_sample_q(const RunConfig& c, std::ostream& out) {
    SpectralData d = genus1_spectral(c.branch, c.divisor);
    FieldContext ctx(d, resolve_lambda0(c, d));
    json j = document(c, "sample-q", &d);
    j["grid"] = to_json(c.grid);
    json a = json::array(), skipped = json::array();
    for (int jt = 0; jt < c.grid.nt; ++jt)
        for (int is = 0; is < c.grid.ns; ++is) {
            double s = c.grid.s_at(is), t = c.grid.t_at(jt);
            try {
                QValue q = q_potential(s, t, ctx);
                a.push_back({{"s", s}, {"t", t}, {"q", to_json(q.q)}, {"q_s", to_json(q.q_s)},
                             {"q_t", to_json(q.q_t)}, {"q_st", to_json(q.q_st)}});
            } catch (const ThetaDivisorError&) {
                skipped.push_back({s, t});
            }
        }
    j["samples"] = std::move(a);
    j["skipped"] = std::move(skipped);
    emit(c, j.dump(2) + "\n", out);
    return 0;
}

int cmd_closure(const RunConfig& c, std::ostream& out) {
    SpectralData d = genus1_spectral(c.branch, c.divisor);
    double L0 = resolve_lambda0(c, d);
    ClosureReport rep = phase_check(c.kind, L0, quantized_period(c.kind, c.index, d), d, c.tol);
    json j = document(c, "closure", &d);
    j["report"] = to_json(rep);
    emit(c, j.dump(2) + "\n", out);
    return 0;
}

BranchFamily make_family(const RunConfig& c) {
    BranchFamily f;
    BranchData b = c.branch;
    const std::string v = c.vary;
    if (v == "im_lambda1")
        f.param = [b](double x) { return BranchData{{b.lambda1.real(), x}, b.lambda2}; };
    else if (v == "im_lambda2")
        f.param = [b](double x) { return BranchData{b.lambda1, {b.lambda2.real(), x}}; };
    else if (v == "im_both")
        f.param = [b](double x) { return BranchData{{b.lambda1.real(), x}, {b.lambda2.real(), x}}; };
    else if (v == "re_lambda1")
        f.param = [b](double x) { return BranchData{{x, b.lambda1.imag()}, b.lambda2}; };
    else if (v == "re_lambda2")
        f.param = [b](double x) { return BranchData{b.lambda1, {x, b.lambda2.imag()}}; };
    else
        invalid("search.vary must be im_lambda1, im_lambda2, im_both, re_lambda1 or re_lambda2");
    if (!(c.hi > c.lo)) invalid("search.range must satisfy lo < hi");
    f.lo = c.lo;
    f.hi = c.hi;
    f.root_index = c.root_index;
    f.divisor = c.divisor;
    return f;
}

int cmd_search(const RunConfig& c, std::ostream& out) {
    SearchResult r = search_phase(c.kind, make_family(c), c.index, c.search_tol, c.tol);
    json j = document(c, "search", &r.data);
    j["vary"] = c.vary;
    j["theta_star"] = r.theta_star;
    j["evaluations"] = r.evaluations;
    j["branch"] = {{"lambda1", to_json(r.branch.lambda1)}, {"lambda2", to_json(r.branch.lambda2)}};
    j["report"] = to_json(r.report);
    emit(c, j.dump(2) + "\n", out);
    return r.report.passed ? 0 : 1;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    SpectralData d = genus1_spectral(c.branch, c.divisor);
    FieldContext ctx(d, resolve_lambda0(c, d));
    std::vector<ResidualReport> reps;
    reps.push_back(lax_propagation_residual(ctx, Direction::S, 1.0));
    reps.push_back(lax_propagation_residual(ctx, Direction::T, 1.0));
    reps.push_back(zero_curvature_residual(ctx, c.grid));
    reps.push_back(plr_equation_residual(ctx, c.grid));
    for (auto& g : geometry_residuals(ctx, c.grid)) reps.push_back(g);
    if (c.raw.contains("index")) {
        double period = quantized_period(c.kind, c.index, d);
        ClosureReport rep = phase_check(c.kind, ctx.Lambda0(), period, d, c.tol);
        reps.push_back(closure_residual(ctx, rep, c.closure_samples));
    }
    json j = document(c, "verify", &d);
    j["Lambda0"] = ctx.Lambda0();
    json a = json::array();
    bool ok = true;
    for (const auto& r : reps) {
        a.push_back(to_json(r));
        ok = ok && r.passed;
    }
    j["reports"] = std::move(a);
    j["passed"] = ok;
    emit(c, j.dump(2) + "\n", out);
    return ok ? 0 : 1;
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::IoError:
            return 3;
        case ErrorKind::InvalidInput:
        case ErrorKind::InvalidBranchData:
        case ErrorKind::DomainError:
        case ErrorKind::ModulusDegenerate:
        case ErrorKind::InvalidPeriodMatrix:
        case ErrorKind::AtBranchPoint:
        case ErrorKind::PathThroughCut:
        case ErrorKind::NoRealRoot:
        case ErrorKind::NoPositiveRoot:
        case ErrorKind::NoRootInBracket:
            return 2;
        default:
            return 1;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{kUsage, "plr"};
    app.set_version_flag("--version", std::string(PLR_VERSION));
    app.require_subcommand(1);

    std::string config_path, lambda1, lambda2, lambda0, kind, format, output, vary;
    std::optional<int> index, ns, nt, root_index;
    std::optional<double> s0, s1, t0, t1, lo, hi;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "JSON config file");
        sub->add_option("--lambda1", lambda1, "branch point re,im");
        sub->add_option("--lambda2", lambda2, "branch point re,im");
        sub->add_option("--lambda0", lambda0, "reconstruction point or auto-critical:s|t");
        sub->add_option("--root-index", root_index, "critical root index (-1 = largest)");
        sub->add_option("--kind", kind, "closure kind s|t");
        sub->add_option("--index", index, "quantisation index n or m");
        sub->add_option("--s0", s0);
        sub->add_option("--s1", s1);
        sub->add_option("--ns", ns);
        sub->add_option("--t0", t0);
        sub->add_option("--t1", t1);
        sub->add_option("--nt", nt);
        sub->add_option("--format", format, "csv|json (curve)");
        sub->add_option("-o,--output", output, "output path, '-' for stdout");
        sub->add_option("--vary", vary, "search parameter");
        sub->add_option("--lo", lo, "search range start");
        sub->add_option("--hi", hi, "search range end");
    };
    const char* names[][2] = {{"spectral", "genus-one spectral data as JSON"},
                              {"curve", "sample the Sym curve on a grid"},
                              {"sample-q", "sample the potential q and its derivatives"},
                              {"closure", "closure (s) or periodicity (t) report"},
                              {"search", "tune a branch-point family for quantised closure"},
                              {"verify", "residual suite; exit 1 if any report fails"}};
    std::vector<CLI::App*> subs;
    for (auto& n : names) {
        subs.push_back(app.add_subcommand(n[0], n[1]));
        add_common(subs.back());
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        json raw = config_path.empty() ? json::object() : load_json_file(config_path);
        if (!raw.is_object()) invalid("config root must be an object");
        auto cset = [](const std::string& s) {
            cplx z = parse_complex_flag(s);
            return json::array({z.real(), z.imag()});
        };
        if (!lambda1.empty()) raw["branch"]["lambda1"] = cset(lambda1);
        if (!lambda2.empty()) raw["branch"]["lambda2"] = cset(lambda2);
        if (!lambda0.empty()) raw["lambda0"] = lambda0;
        if (root_index) raw["root_index"] = *root_index;
        if (!kind.empty()) raw["kind"] = kind;
        if (index) raw["index"] = *index;
        if (s0 || s1) {
            json& s = raw["grid"]["s"];
            if (!s.is_array()) s = {0.0, 1.0};
            if (s0) s[0] = *s0;
            if (s1) s[1] = *s1;
        }
        if (t0 || t1) {
            json& t = raw["grid"]["t"];
            if (!t.is_array()) t = {0.0, 0.0};
            if (t0) t[0] = *t0;
            if (t1) t[1] = *t1;
        }
        if (ns) raw["grid"]["ns"] = *ns;
        if (nt) raw["grid"]["nt"] = *nt;
        if (!format.empty()) raw["format"] = format;
        if (!output.empty()) raw["output"] = output;
        if (!vary.empty()) raw["search"]["vary"] = vary;
        if (lo || hi) {
            json& r = raw["search"]["range"];
            if (!r.is_array()) r = {0.0, 0.0};
            if (lo) r[0] = *lo;
            if (hi) r[1] = *hi;
        }
        RunConfig c = resolve(std::move(raw));

        const std::string which = app.get_subcommands().front()->get_name();
        if (which == "spectral") return cmd_spectral(c, out);
        if (which == "curve") return cmd_curve(c, out);
        if (which == "sample-q") return cmd_sample_q(c, out);
        if (which == "closure") return cmd_closure(c, out);
        if (which == "search") return cmd_search(c, out);
        return cmd_verify(c, out);
    } catch (const Error& e) {
        err << "plr: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "plr: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace plr

#include "plr/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "plr/error.hpp"
#include "plr/quadrature.hpp"

namespace plr {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json provenance_json(const Provenance& p) {
    return {{"tool", "plr"}, {"version", p.version}, {"config_hash", hex64(p.config_hash)}};
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorKind::InvalidInput, "complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const SpectralData& d) {
    json j;
    j["branch"] = {{"lambda1", to_json(d.branch.lambda1)}, {"lambda2", to_json(d.branch.lambda2)}};
    j["divisor"] = {{"epsilon", d.divisor.epsilon}, {"y", d.divisor.y}};
    j["h"] = to_json(d.h);
    j["p"] = d.modulus.p;
    j["p_prime"] = d.modulus.p_prime;
    j["K"] = d.K;
    j["K_prime"] = d.K_prime;
    j["E_complete"] = d.E_complete;
    j["tau"] = d.tau;
    j["mu0"] = d.mu0;
    j["c"] = d.c;
    j["d"] = d.d;
    j["c1"] = d.c1;
    j["c2"] = d.c2;
    j["c3"] = to_json(d.c3);
    j["U"] = d.U;
    j["V"] = d.V;
    j["r"] = to_json(d.r);
    j["E"] = d.E_const;
    j["H"] = d.H_const;
    j["F"] = d.F_const;
    j["log_beta"] = d.log_beta;
    j["sqrt_beta"] = d.sqrt_beta();
    j["K_minus"] = to_json(d.K_minus);
    j["D"] = to_json(d.D);
    j["abel_inf"] = to_json(d.abel_inf);
    j["omega_norm"] = d.omega_norm;
    QuadOptions q;
    j["tolerances"] = {{"eps_cut", d.eps_cut}, {"quad_abs", q.abs_tol}, {"quad_rel", q.rel_tol}};
    return j;
}

SpectralData spectral_from_json(const json& j, double rel_tol) {
    try {
        BranchData b{complex_from_json(j.at("branch").at("lambda1")), complex_from_json(j.at("branch").at("lambda2"))};
        Divisor dv;
        if (j.contains("divisor")) {
            dv.epsilon = j["divisor"].value("epsilon", 0);
            dv.y = j["divisor"].value("y", 0.0);
        }
        SpectralData d = genus1_spectral(b, dv);
        auto check = [&](const char* key, cplx have) {
            if (!j.contains(key)) return;
            cplx want = complex_from_json(j[key]);
            if (std::abs(want - have) > rel_tol * std::max(1.0, std::abs(have)))
                throw Error(ErrorKind::InvalidInput, std::string("stored '") + key + "' disagrees with recomputation");
        };
        check("tau", d.tau);
        check("U", d.U);
        check("V", d.V);
        check("E", d.E_const);
        check("H", d.H_const);
        check("c3", d.c3);
        check("mu0", d.mu0);
        return d;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("spectral JSON: ") + e.what());
    }
}

std::string spectral_hash(const SpectralData& d) { return hex64(fnv1a64(to_json(d).dump())); }

json to_json(const ClosureReport& r) {
    return {{"kind", to_string(r.kind)},
            {"Lambda0", r.Lambda0},
            {"period", r.period},
            {"n_or_m", r.n_or_m},
            {"quasimomentum", r.quasimomentum},
            {"critical_residual", r.critical_residual},
            {"phase_distance", r.phase_distance},
            {"direct_phase", to_json(r.direct_phase)},
            {"jacobi_phase", to_json(r.jacobi_phase)},
            {"jacobi_mismatch", r.jacobi_mismatch},
            {"tolerances", {{"critical", r.tol.critical}, {"phase", r.tol.phase}}},
            {"passed", r.passed}};
}

json to_json(const GridSpec& g) {
    return {{"s", {g.s0, g.s1}}, {"ns", g.ns}, {"t", {g.t0, g.t1}}, {"nt", g.nt}};
}

static json skip_list(const std::vector<std::array<double, 2>>& sk) {
    json a = json::array();
    for (const auto& p : sk) a.push_back({p[0], p[1]});
    return a;
}

json to_json(const ResidualReport& r) {
    return {{"name", r.name},
            {"grid", to_json(r.grid)},
            {"max_residual", r.max_residual},
            {"tolerance", r.tolerance},
            {"passed", r.passed},
            {"argmax", {r.argmax_s, r.argmax_t}},
            {"skipped", skip_list(r.skipped)}};
}

json to_json(const CurveGrid& g, bool include_samples) {
    json j;
    j["grid"] = to_json(g.grid);
    j["count"] = g.samples.size();
    j["skipped"] = skip_list(g.skipped);
    if (include_samples) {
        json a = json::array();
        for (const auto& c : g.samples)
            a.push_back({{"s", c.s},
                         {"t", c.t},
                         {"gamma", {c.gamma.x(), c.gamma.y(), c.gamma.z()}},
                         {"q", to_json(c.q)},
                         {"kappa", c.kappa},
                         {"torsion", c.torsion}});
        j["samples"] = std::move(a);
    }
    return j;
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void write_csv(std::ostream& out, const CurveGrid& g, const Provenance& p, const std::vector<std::string>& notes) {
    out << "# plr " << p.version << " config_hash=" << hex64(p.config_hash) << '\n';
    for (const auto& n : notes) out << "# " << n << '\n';
    out << "s,t,x,y,z,q_re,q_im,kappa,torsion\n";
    for (const auto& c : g.samples) {
        const double v[] = {c.s, c.t, c.gamma.x(), c.gamma.y(), c.gamma.z(), c.q.real(), c.q.imag(), c.kappa, c.torsion};
        for (size_t k = 0; k < 9; ++k) out << (k ? "," : "") << format_number(v[k]);
        out << '\n';
    }
}

}  // namespace plr

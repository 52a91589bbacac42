// lcb: command-line front end. Exit codes: 0 ok, 1 invariant violation,
// 2 usage/config/input error. Column layouts are in FORMATS.md.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "config.hpp"
#include "lcb/critpoints.hpp"
#include "lcb/groupact.hpp"
#include "lcb/invariants.hpp"
#include "lcb/kkls.hpp"
#include "lcb/landau.hpp"
#include "lcb/reduction.hpp"
#include "lcb/singtools.hpp"

using json = nlohmann::json;
using namespace lcbcli;

namespace {

constexpr int kSchemaVersion = 1;

// full precision, locale independent
std::string num(double v) {
    char buf[40];
    if (v == 0) v = 0;  // no "-0"
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw lcb::Error("cannot write " + path);
    }
    std::ostream& out() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void write_json(const std::string& path, json j) {
    j["schema_version"] = kSchemaVersion;
    Sink s(path);
    s.out() << j.dump(2) << "\n";
}

struct Common {
    std::string config;
    std::string output;
};

RunConfig load_or_empty(const std::string& path) { return path.empty() ? RunConfig::from_string("") : RunConfig::load(path); }

json monomial_json(const lcb::XYMonomial& m) { return json::array({m.first, m.second}); }

json verdict_json(const lcb::Verdict& v) {
    json j;
    j["holds"] = v.holds;
    j["failing_degree"] = v.failing_degree;
    j["witness"] = v.witness ? monomial_json(*v.witness) : json(nullptr);
    json degs = json::array();
    for (const auto& r : v.degrees) {
        json missing = json::array();
        for (const auto& m : r.missing) missing.push_back(monomial_json(m));
        degs.push_back({{"degree", r.degree}, {"dim", r.dim}, {"rank", r.rank}, {"missing", missing}});
    }
    j["degrees"] = degs;
    return j;
}

std::string kinds_string(const std::vector<lcb::EventKind>& ks) {
    std::string s;
    for (const auto& k : ks) s += (s.empty() ? "" : "+") + lcb::to_string(k);
    return s;
}

void curve_csv(std::ostream& os, const std::vector<lcb::BifurcationCurve>& curves, bool header = true) {
    if (header) os << "e2,e3,kind,param\n";
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.points.size(); ++i)
            os << num(c.points[i].x()) << "," << num(c.points[i].y()) << "," << lcb::to_string(c.kind) << ","
               << num(c.params[i]) << "\n";
}

std::vector<lcb::BifurcationCurve> bifurcation_curves(const lcb::NormalFormParams& p, double x_lo, double x_hi,
                                                      int samples) {
    std::vector<lcb::BifurcationCurve> curves{lcb::swallowtail_section(p, x_lo, x_hi, samples)};
    if (p.e8 == 0 && p.n != 0) {
        auto bb = lcb::bluebird_section(p, x_lo, x_hi, samples);
        curves.insert(curves.end(), bb.begin(), bb.end());
    }
    return curves;
}

void census_csv(std::ostream& os, const lcb::Census& c) {
    os << "e2,e3,axis_roots,biaxial_orbits,total,origin_sign\n";
    for (const auto& cell : c.cells)
        os << num(cell.e2) << "," << num(cell.e3) << "," << cell.count.axis_roots << "," << cell.count.biaxial_orbits
           << "," << cell.count.total << "," << cell.count.origin_sign << "\n";
}

void events_csv(std::ostream& os, const lcb::SweepResult& r) {
    os << "T,kinds,x_prime,ambiguous,note\n";
    for (const auto& e : r.events)
        os << num(e.T) << "," << kinds_string(e.kinds) << "," << num(e.x_prime) << "," << (e.ambiguous ? 1 : 0) << ","
           << e.note << "\n";
}

void table_csv(std::ostream& os, const lcb::SweepResult& r) {
    os << "T,branch_id,x,u,biaxial,type\n";
    for (const auto& b : r.table)
        os << num(b.T) << "," << b.branch_id << "," << num(b.x_prime) << "," << num(b.u_prime) << ","
           << (b.biaxial ? 1 : 0) << "," << lcb::to_string(b.type) << "\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

// Subcommands -------------------------------------------------------------

int cmd_molien(const Common& c, const std::string& group, int max_degree, int grid) {
    if (max_degree < 0) throw lcb::Error("--max-degree must be >= 0");
    std::vector<std::int64_t> coeffs;
    double residual = 0;
    if (group == "so3") {
        auto r = lcb::molien_so3_conjugacy(max_degree, grid);
        coeffs = r.coeffs;
        residual = r.max_residual;
    } else if (group == "d3tilde") {
        coeffs = lcb::molien_finite(lcb::d3tilde_on_r4(), max_degree);
    } else if (group == "d3xd3") {
        coeffs = lcb::molien_finite(lcb::d3xd3_on_r4(), max_degree);
    } else {
        coeffs = lcb::molien_finite(lcb::d3_on_r2(), max_degree);
    }
    Sink s(c.output);
    s.out() << "degree,coefficient\n";
    for (std::size_t d = 0; d < coeffs.size(); ++d) s.out() << d << "," << coeffs[d] << "\n";
    if (residual > 1e-8) {
        std::cerr << "molien: SO(3) averages are " << residual << " away from integers\n";
        return 1;
    }
    return 0;
}

int cmd_invariants(const Common& c, const std::string& points) {
    std::ifstream in(points);
    if (!in) throw lcb::Error("cannot open " + points);
    std::string line;
    int no = 0;
    Sink s(c.output);
    s.out() << "s,p,d,c,f2,f3,f4,f5,f6,syzygy\n";
    double worst = 0;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto f = split(line, ',');
        if (no == 1 && !f.empty() && f[0].find_first_of("0123456789") == std::string::npos) continue;  // header
        if (f.size() != 4) throw lcb::Error(points + ":" + std::to_string(no) + ": want s,p,d,c");
        double v[4];
        for (int i = 0; i < 4; ++i) {
            std::size_t used = 0;
            try {
                v[i] = std::stod(f[static_cast<std::size_t>(i)], &used);
                if (f[static_cast<std::size_t>(i)].find_first_not_of(" \t", used) != std::string::npos) throw lcb::Error("");
            } catch (const std::exception&) {
                throw lcb::Error(points + ":" + std::to_string(no) + ": not a number");
            }
        }
        auto b = lcb::eval_basis_r4(v[0], v[1], v[2], v[3]);
        double scale = std::pow(b.f2, 5);
        double syz = b.f5 * b.f5 + b.f4 * b.f6;
        double rel = scale > 0 ? std::abs(syz) / scale : std::abs(syz);
        worst = std::max(worst, rel);
        s.out() << num(v[0]) << "," << num(v[1]) << "," << num(v[2]) << "," << num(v[3]) << "," << num(b.f2) << ","
                << num(b.f3) << "," << num(b.f4) << "," << num(b.f5) << "," << num(b.f6) << "," << num(rel) << "\n";
    }
    if (worst > 1e-12) {
        std::cerr << "invariants: syzygy f5^2 + f4 f6 = 0 violated, relative residual " << worst << "\n";
        return 1;
    }
    return 0;
}

int cmd_entropy(const Common& c, int nodes) {
    RunConfig cfg = load_or_empty(c.config);
    if (nodes <= 0) nodes = cfg.integer("entropy", "nodes", 16);
    auto e = lcb::kkls_coefficients(6, nodes);
    json j;
    j["kind"] = "entropy_coefficients";
    j["nodes"] = e.nodes;
    j["cap"] = e.cap;
    j["sign_convention"] = "coeffs are the invariant-basis coordinates of -S/k; a_i = kT * coeffs_i = -kT * a_i'";
    for (std::size_t i = 0; i < 9; ++i) j[lcb::primed_names()[i]] = e.primed[i];
    json coeffs;
    for (std::size_t i = 0; i < 12; ++i) coeffs[lcb::fit_slot_names()[i]] = e.coeffs[i];
    j["coeffs"] = coeffs;
    j["quadratic"] = {{"quad_s", e.quad_s}, {"quad_pdc", e.quad_pdc}, {"cross", e.quad_cross}};
    j["diagnostics"] = {{"fit_residual", e.fit_residual},
                        {"max_linear_term", e.max_linear_term},
                        {"log_partition_quadratic", e.log_partition_quadratic}};
    write_json(c.output, j);
    return 0;
}

int cmd_classify(const Common& c) {
    auto cfg = RunConfig::load(c.config);
    auto src = model_source(cfg);
    json j;
    j["kind"] = "classification";
    double a, b, g;
    if (src.from_model) {
        auto q = lcb::coeffs_from_Tlambda(src.cone);
        a = q.alpha;
        b = q.beta;
        g = q.gamma;
        j["T"] = src.cone.T;
        j["U0"] = src.cone.U0;
        j["lambda"] = src.cone.lambda;
        j["mu"] = src.cone.mu;
        j["xi"] = src.cone.xi;
        j["R_T"] = src.cone.R_T;
    } else {
        a = src.explicit_coeffs.alpha;
        b = src.explicit_coeffs.beta;
        g = src.explicit_coeffs.gamma;
    }
    j["alpha"] = a;
    j["beta"] = b;
    j["gamma"] = g;
    j["cone_residual"] = a * b - g * g;
    j["stability"] = lcb::to_string(lcb::stability_classify(a, b, g));
    write_json(c.output, j);
    return 0;
}

int cmd_solve4d(const Common& c) {
    auto cfg = RunConfig::load(c.config);
    auto k = landau_coeffs(model_source(cfg));
    lcb::Solve4dOptions opt;
    opt.search_radius = cfg.number("solver", "radius", opt.search_radius);
    opt.grid_n = cfg.integer("solver", "grid_n", opt.grid_n);
    opt.tol = cfg.number("solver", "tol", opt.tol);
    opt.max_iter = cfg.integer("solver", "max_iter", opt.max_iter);
    opt.degenerate_tol = cfg.number("solver", "degenerate_tol", opt.degenerate_tol);
    auto set = lcb::critical_points_4d(k, opt);
    Sink s(c.output);
    s.out() << "orbit_id,tag,s,p,d,c,value,morse_index,degenerate,gradient_norm\n";
    for (const auto& r : set.points)
        s.out() << r.orbit_id << "," << lcb::to_string(r.tag) << "," << num(r.location[0]) << "," << num(r.location[1])
                << "," << num(r.location[2]) << "," << num(r.location[3]) << "," << num(r.value) << ","
                << r.morse_index << "," << (r.degenerate ? 1 : 0) << "," << num(r.gradient_norm) << "\n";
    if (set.failed_seeds > 0) std::cerr << "solve4d: " << set.failed_seeds << " seeds did not converge\n";
    return 0;
}

int cmd_reduce(const Common& c) {
    auto cfg = RunConfig::load(c.config);
    auto src = model_source(cfg);
    double xi, mu;
    if (src.from_model) {
        xi = cfg.number("reduce", "xi", src.cone.xi);
        mu = cfg.number("reduce", "mu", src.cone.mu);
    } else {
        xi = cfg.require("reduce", "xi");
        mu = cfg.require("reduce", "mu");
    }
    auto k = landau_coeffs(src);
    lcb::ReducedCoeffs r;
    try {
        r = lcb::residual_coeffs(k, xi, mu);
    } catch (const lcb::Error& e) {
        cfg.fail("reduce", "mu", e.what());
    }
    json j;
    j["kind"] = "reduced_coeffs";
    j["xi"] = xi;
    j["mu"] = mu;
    j["e2"] = r.e2;
    j["e3"] = r.e3;
    j["e4"] = r.e4;
    j["e5"] = r.e5;
    j["m"] = r.m;
    j["n"] = r.n;
    j["sigma"] = r.sigma;
    j["C"] = r.C;
    j["S"] = r.S;
    write_json(c.output, j);
    return 0;
}

int cmd_solve(const Common& c) {
    auto cfg = RunConfig::load(c.config);
    auto p = normal_form(cfg, "normal_form");
    auto pts = lcb::all_critical_points(p);
    Sink s(c.output);
    s.out() << "x,u,biaxial,type,eig1,eig2\n";
    for (const auto& q : pts)
        s.out() << num(q.pos.x()) << "," << num(q.pos.y()) << "," << (q.biaxial ? 1 : 0) << ","
                << lcb::to_string(q.cls.type) << "," << num(q.cls.eigenvalues[0]) << "," << num(q.cls.eigenvalues[1])
                << "\n";
    return 0;
}

int cmd_bifset(const Common& c) {
    auto cfg = RunConfig::load(c.config);
    auto p = normal_form(cfg, "normal_form");
    double x_lo = cfg.number("bifset", "x_lo", -0.6), x_hi = cfg.number("bifset", "x_hi", 0.6);
    int samples = cfg.integer("bifset", "samples", 401);
    Sink s(c.output);
    curve_csv(s.out(), bifurcation_curves(p, x_lo, x_hi, samples));
    return 0;
}

lcb::Census census_from(const RunConfig& cfg, const lcb::NormalFormParams& p) {
    return lcb::region_census(p, cfg.number("census", "e2_lo", -0.4), cfg.number("census", "e2_hi", 0.6),
                              cfg.integer("census", "n2", 41), cfg.number("census", "e3_lo", -0.6),
                              cfg.number("census", "e3_hi", 0.6), cfg.integer("census", "n3", 41));
}

int cmd_census(const Common& c) {
    auto cfg = RunConfig::load(c.config);
    Sink s(c.output);
    census_csv(s.out(), census_from(cfg, normal_form(cfg, "normal_form")));
    return 0;
}

int cmd_sweep(const Common& c, const std::string& table_path) {
    auto cfg = RunConfig::load(c.config);
    if (!cfg.has_section("sweep_start") || !cfg.has_section("sweep_end"))
        throw ConfigError(cfg.name() + ": sweep needs [sweep_start] and [sweep_end]");
    double T_from = cfg.number("sweep", "T_from", 1.0), T_to = cfg.number("sweep", "T_to", 0.0);
    if (T_from == T_to) cfg.fail("sweep", "T_to", "T_from and T_to coincide");
    auto path = lcb::linear_path(normal_form(cfg, "sweep_start"), T_from, normal_form(cfg, "sweep_end"), T_to);
    auto r = lcb::branch_sweep(path, T_from, T_to, cfg.integer("sweep", "steps", 300),
                               cfg.number("sweep", "bracket_tol", 1e-11));
    {
        Sink s(c.output);
        events_csv(s.out(), r);
    }
    if (!table_path.empty()) {
        Sink t(table_path);
        table_csv(t.out(), r);
    }
    return 0;
}

int cmd_determinacy(const Common& c, const std::string& poly, int k, int extent, bool suite) {
    json j;
    if (suite) {
        j["kind"] = "determinacy_suite";
        json cases = json::array();
        for (const auto& pc : lcb::low_codim_suite()) {
            json e = verdict_json(pc.verdict);
            e["number"] = pc.number;
            e["description"] = pc.description;
            e["poly"] = pc.f.to_string();
            e["k"] = pc.k;
            e["claimed"] = pc.claimed;
            e["agrees"] = pc.claimed == pc.verdict.holds;
            cases.push_back(e);
        }
        j["cases"] = cases;
    } else {
        if (poly.empty() || k <= 0) throw lcb::Error("determinacy needs --poly and --k (or --suite)");
        auto f = lcb::parse_weighted_poly(poly);
        j = verdict_json(lcb::k_determined(f, k, extent));
        j["kind"] = "determinacy";
        j["poly"] = f.to_string();
        j["k"] = k;
        j["extent"] = extent;
    }
    write_json(c.output, j);
    return 0;
}

int cmd_versal(const Common& c, const std::string& poly, const std::string& monos, int window) {
    if (poly.empty()) throw lcb::Error("versal needs --poly");
    auto h = lcb::parse_weighted_poly(poly);
    std::vector<lcb::XYMonomial> ms;
    std::string norm = monos;
    std::replace(norm.begin(), norm.end(), ';', ' ');
    std::istringstream items(norm);
    std::string item;
    while (items >> item) {
        auto ab = split(item, ',');
        if (ab.size() != 2) throw lcb::Error("bad monomial '" + item + "', want a,b");
        try {
            ms.emplace_back(std::stoi(ab[0]), std::stoi(ab[1]));
        } catch (const std::exception&) {
            throw lcb::Error("bad monomial '" + item + "'");
        }
    }
    json j = verdict_json(lcb::versal_check(h, ms, window));
    j["kind"] = "versality";
    j["poly"] = h.to_string();
    json mj = json::array();
    for (const auto& m : ms) mj.push_back(monomial_json(m));
    j["monomials"] = mj;
    j["window"] = window;
    write_json(c.output, j);
    return 0;
}

int cmd_spanning(const Common& c, int samples, long long seed_flag) {
    RunConfig cfg = load_or_empty(c.config);
    std::uint64_t sd = seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag) : seed(cfg, 1);
    auto r = lcb::spanning_check(samples, sd);
    json j;
    j["kind"] = "spanning";
    j["samples"] = r.num_samples;
    j["seed"] = r.seed;
    j["linear_rank"] = r.linear_rank;
    j["affine_rank"] = r.affine_rank;
    j["explicit_rank"] = r.explicit_rank;
    j["identity_residual"] = r.identity_residual;
    write_json(c.output, j);
    if (r.identity_residual > 1e-12) {
        std::cerr << "spanning: explicit identity residual " << r.identity_residual << "\n";
        return 1;
    }
    return 0;
}

int cmd_figdata(const Common& c, const std::string& outdir) {
    RunConfig cfg = load_or_empty(c.config);
    namespace fs = std::filesystem;
    fs::create_directories(outdir);
    auto base = normal_form(cfg, "normal_form");
    auto open = [&](const std::string& name) {
        std::ofstream f(fs::path(outdir) / name, std::ios::binary);
        if (!f) throw lcb::Error("cannot write " + name);
        return f;
    };
    std::vector<std::string> written;
    for (double e4 : {-1.0, 1.0}) {
        auto p = base;
        p.e4 = e4;
        p.e5 = 0;
        std::string tag = e4 < 0 ? "e4neg" : "e4pos";
        {
            auto f = open("curves_" + tag + ".csv");
            curve_csv(f, bifurcation_curves(p, -0.6, 0.6, 401));
        }
        {
            auto f = open("census_" + tag + ".csv");
            census_csv(f, lcb::region_census(p, -0.4, 0.6, 101, -0.6, 0.6, 101));
        }
        written.push_back("curves_" + tag + ".csv");
        written.push_back("census_" + tag + ".csv");
    }
    // the four sweep paths in the (e2,e3) plane, m and n from the config
    struct PathSpec {
        const char* name;
        double e2a, e2b, e3, e4;
    };
    for (auto ps : {PathSpec{"a", -0.3, 0.3, 0.0, 0.5}, PathSpec{"b", -0.3, 0.6, 0.0, -1.0},
                    PathSpec{"c", -0.3, 0.6, 0.32, -1.0}, PathSpec{"d", -0.3, 0.6, 0.15, -1.0}}) {
        auto a = base, b = base;
        a.e2 = ps.e2a;
        b.e2 = ps.e2b;
        a.e3 = b.e3 = ps.e3;
        a.e4 = b.e4 = ps.e4;
        a.e5 = b.e5 = 0;
        auto r = lcb::branch_sweep(lcb::linear_path(a, 0.0, b, 1.0), 1.0, 0.0, 300);
        std::string n = ps.name;
        {
            auto f = open("sweep_" + n + "_table.csv");
            table_csv(f, r);
        }
        {
            auto f = open("sweep_" + n + "_events.csv");
            events_csv(f, r);
        }
        written.push_back("sweep_" + n + "_table.csv");
        written.push_back("sweep_" + n + "_events.csv");
    }
    // e5 != 0 slice: census only
    {
        auto p = base;
        p.e4 = -1;
        p.e5 = 0.5;
        auto f = open("census_e5.csv");
        census_csv(f, lcb::region_census(p, -0.4, 0.6, 101, -0.6, 0.6, 101));
        written.push_back("census_e5.csv");
    }
    {
        auto f = open("figures.gp");
        f << "# gnuplot script for the emitted point clouds; run from this directory\n"
             "set datafile separator ','\n"
             "set terminal pngcairo size 900,700\n"
             "set xlabel 'e2'\nset ylabel 'e3'\n";
        for (const char* tag : {"e4neg", "e4pos"}) {
            f << "set output 'curves_" << tag << ".png'\n"
              << "plot 'curves_" << tag << ".csv' every ::1 using 1:(strcol(3) eq 'S' ? $2 : 1/0) with points pt 7 ps 0.3 title 'S', \\\n"
              << "     '' every ::1 using 1:(strcol(3) eq 'B0' ? $2 : 1/0) with points pt 7 ps 0.3 title 'B0', \\\n"
              << "     '' every ::1 using 1:(strcol(3) eq 'B1' ? $2 : 1/0) with points pt 7 ps 0.3 title 'B1'\n";
            f << "set output 'census_" << tag << ".png'\n"
              << "plot 'census_" << tag << ".csv' every ::1 using 1:2:5 with points pt 5 ps 0.6 palette title 'count'\n";
        }
        f << "set output 'census_e5.png'\n"
             "plot 'census_e5.csv' every ::1 using 1:2:5 with points pt 5 ps 0.6 palette title 'count'\n";
        f << "set xlabel 'T'\nset ylabel \"x'\"\n";
        for (const char* n : {"a", "b", "c", "d"})
            f << "set output 'sweep_" << n << ".png'\n"
              << "plot 'sweep_" << n << "_table.csv' every ::1 using 1:3:2 with points pt 7 ps 0.3 palette title 'path "
              << n << "'\n";
        written.push_back("figures.gp");
    }
    Sink s(c.output);
    for (const auto& w : written) s.out() << w << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Landau free-energy, invariant theory and bifurcation toolkit"};
    app.require_subcommand(1);
    std::map<std::string, std::function<int()>> actions;
    Common common;

    auto add = [&](const std::string& name, const std::string& desc, bool needs_config) {
        auto* sub = app.add_subcommand(name, desc);
        auto* opt = sub->add_option("-c,--config", common.config, "INI config file");
        if (needs_config) opt->required();
        sub->add_option("-o,--output", common.output, "output file (default stdout)");
        return sub;
    };

    std::string group = "d3tilde";
    int max_degree = 12, grid = 0;
    auto* molien = add("molien", "Molien series coefficients", false);
    molien->add_option("--group", group)->check(CLI::IsMember({"d3tilde", "d3xd3", "d3", "so3"}));
    molien->add_option("--max-degree", max_degree);
    molien->add_option("--grid", grid, "torus grid for so3 (0 = automatic)");
    actions["molien"] = [&] { return cmd_molien(common, group, max_degree, grid); };

    std::string points;
    auto* inv = add("invariants", "evaluate f2..f6 and the syzygy at points", false);
    inv->add_option("--points", points, "CSV of s,p,d,c")->required();
    actions["invariants"] = [&] { return cmd_invariants(common, points); };

    int nodes = 0;
    auto* ent = add("entropy-coeffs", "entropy expansion coefficients by quadrature", false);
    ent->add_option("--nodes", nodes, "quadrature nodes per angle (default 16)");
    actions["entropy-coeffs"] = [&] { return cmd_entropy(common, nodes); };

    add("classify", "stability of the isotropic state", true);
    actions["classify"] = [&] { return cmd_classify(common); };
    add("solve4d", "critical points of the degree-6 free energy", true);
    actions["solve4d"] = [&] { return cmd_solve4d(common); };
    add("reduce", "reduced normal-form coefficients at a cone point", true);
    actions["reduce"] = [&] { return cmd_reduce(common); };
    add("solve", "critical points of the normal form", true);
    actions["solve"] = [&] { return cmd_solve(common); };
    add("bifset", "bifurcation curves in the (e2,e3) plane", true);
    actions["bifset"] = [&] { return cmd_bifset(common); };
    add("census", "critical-point counts on an (e2,e3) grid", true);
    actions["census"] = [&] { return cmd_census(common); };

    std::string table;
    auto* sweep = add("sweep", "branch sweep along a straight parameter path", true);
    sweep->add_option("--table", table, "also write the branch table here");
    actions["sweep"] = [&] { return cmd_sweep(common, table); };

    std::string poly;
    int k = 0, extent = 6;
    bool suite = false;
    auto* det = add("determinacy", "k-determinacy of a D3-invariant jet", false);
    det->add_option("--poly", poly, "terms a,b,coeff separated by ';' or spaces, for coeff X^a Y^b");
    det->add_option("--k", k);
    det->add_option("--extent", extent);
    det->add_flag("--suite", suite, "run the seven low-codimension cases");
    actions["determinacy"] = [&] { return cmd_determinacy(common, poly, k, extent, suite); };

    std::string vpoly, monos;
    int window = 16;
    auto* ver = add("versal", "versality of an unfolding", false);
    ver->add_option("--poly", vpoly)->required();
    ver->add_option("--monomials", monos, "a,b pairs separated by ';' or spaces")->required();
    ver->add_option("--window", window);
    actions["versal"] = [&] { return cmd_versal(common, vpoly, monos, window); };

    int samples = 30;
    long long seed_flag = -1;
    auto* span = add("spanning", "rank of random conjugation operators", false);
    span->add_option("--samples", samples);
    span->add_option("--seed", seed_flag);
    actions["spanning"] = [&] { return cmd_spanning(common, samples, seed_flag); };

    std::string outdir = "figdata";
    auto* fig = add("figdata", "point clouds and a gnuplot script", false);
    fig->add_option("--outdir", outdir);
    actions["figdata"] = [&] { return cmd_figdata(common, outdir); };

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return actions.at(name)();
    } catch (const lcb::InvariantViolation& e) {
        std::cerr << name << ": invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const lcb::Error& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return 2;
    }
}

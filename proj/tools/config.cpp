#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "lcb/kkls.hpp"

namespace lcbcli {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::set<std::string> nf{"e2", "e3", "e4", "e5", "e6", "e8", "m", "n"};
    static const std::map<std::string, std::set<std::string>> s{
        {"model", {"T", "U0", "lambda", "kT"}},
        {"coeffs", {"alpha", "beta", "gamma", "a3", "a4", "b4", "a5", "b5", "a6", "b6", "c6", "d6"}},
        {"entropy", {"nodes"}},
        {"reduce", {"xi", "mu"}},
        {"solver", {"radius", "grid_n", "tol", "max_iter", "degenerate_tol"}},
        {"normal_form", nf},
        {"bifset", {"x_lo", "x_hi", "samples"}},
        {"census", {"e2_lo", "e2_hi", "n2", "e3_lo", "e3_hi", "n3"}},
        {"sweep", {"T_from", "T_to", "steps", "bracket_tol"}},
        {"sweep_start", nf},
        {"sweep_end", nf},
        {"run", {"seed"}},
    };
    return s;
}

std::string trim(std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
}

// Boost drops line numbers once parsed; record them separately.
std::map<std::string, int> scan_lines(const std::string& text) {
    std::map<std::string, int> out;
    std::istringstream in(text);
    std::string line, section;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto t = trim(line);
        if (t.empty() || t[0] == ';' || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            out.emplace(section, no);
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) continue;
        out.emplace(section + "." + trim(t.substr(0, eq)), no);
    }
    return out;
}

double parse_double(const std::string& s, bool& ok) {
    std::size_t used = 0;
    double v = 0;
    ok = false;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        return 0;
    }
    ok = trim(s.substr(used)).empty();
    return v;
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path + ": cannot open config");
    std::stringstream buf;
    buf << f.rdbuf();
    return from_string(buf.str(), path);
}

RunConfig RunConfig::from_string(const std::string& text, const std::string& name) {
    RunConfig c;
    c.name_ = name;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, c.tree_);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(name + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    c.lines_ = scan_lines(text);
    c.validate();
    return c;
}

void RunConfig::validate() const {
    const auto& s = schema();
    for (const auto& [sec, body] : tree_) {
        if (!body.data().empty()) fail(sec, "", "key '" + sec + "' outside any section");
        auto it = s.find(sec);
        if (it == s.end()) fail(sec, "", "unknown section [" + sec + "]");
        for (const auto& [key, v] : body)
            if (!it->second.count(key)) fail(sec, key, "unknown key '" + key + "' in [" + sec + "]");
    }
}

int RunConfig::line_of(const std::string& section, const std::string& key) const {
    auto it = lines_.find(key.empty() ? section : section + "." + key);
    if (it == lines_.end() && !key.empty()) it = lines_.find(section);
    return it == lines_.end() ? 0 : it->second;
}

void RunConfig::fail(const std::string& section, const std::string& key, const std::string& msg) const {
    int line = line_of(section, key);
    throw ConfigError(name_ + (line ? ":" + std::to_string(line) : std::string()) + ": " + msg);
}

bool RunConfig::has_section(const std::string& section) const { return tree_.get_child_optional(section).has_value(); }

bool RunConfig::has(const std::string& section, const std::string& key) const {
    auto sec = tree_.get_child_optional(section);
    return sec && sec->get_child_optional(key);
}

std::optional<std::string> RunConfig::text(const std::string& section, const std::string& key) const {
    if (!has(section, key)) return std::nullopt;
    return trim(tree_.get_child(section).get<std::string>(key));
}

std::optional<double> RunConfig::number(const std::string& section, const std::string& key) const {
    auto t = text(section, key);
    if (!t) return std::nullopt;
    bool ok = false;
    double v = parse_double(*t, ok);
    if (!ok) fail(section, key, "'" + key + "' is not a number: '" + *t + "'");
    return v;
}

double RunConfig::number(const std::string& section, const std::string& key, double fallback) const {
    return number(section, key).value_or(fallback);
}

double RunConfig::require(const std::string& section, const std::string& key) const {
    auto v = number(section, key);
    if (!v) fail(section, "", "missing key '" + key + "' in [" + section + "]");
    return *v;
}

int RunConfig::integer(const std::string& section, const std::string& key, int fallback) const {
    auto v = number(section, key);
    if (!v) return fallback;
    if (*v != static_cast<double>(static_cast<long long>(*v)) || std::abs(*v) > 1e9)
        fail(section, key, "'" + key + "' must be an integer");
    return static_cast<int>(*v);
}

std::array<double, 3> RunConfig::triple(const std::string& section, const std::string& key) const {
    auto t = text(section, key);
    if (!t) fail(section, "", "missing key '" + key + "' in [" + section + "]");
    std::array<double, 3> out{};
    std::stringstream ss(*t);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        bool ok = false;
        double v = parse_double(trim(item), ok);
        if (!ok || i >= 3) fail(section, key, "'" + key + "' must be three comma-separated numbers");
        out[i++] = v;
    }
    if (i != 3) fail(section, key, "'" + key + "' must be three comma-separated numbers");
    return out;
}

ModelSource model_source(const RunConfig& cfg) {
    bool m = cfg.has_section("model"), c = cfg.has_section("coeffs");
    if (m == c) throw ConfigError(cfg.name() + ": need exactly one of [model] and [coeffs]");
    ModelSource src;
    src.nodes = cfg.integer("entropy", "nodes", 16);
    if (m) {
        src.from_model = true;
        double T = cfg.require("model", "T");
        double U0 = cfg.number("model", "U0", 1.0);
        try {
            src.cone = lcb::make_cone_params(T, U0, cfg.triple("model", "lambda"));
        } catch (const lcb::Error& e) {
            cfg.fail("model", "lambda", e.what());
        }
        // k = 1 units: kT defaults to T
        src.kT = cfg.number("model", "kT", T);
        if (!(src.kT > 0)) cfg.fail("model", "kT", "kT must be positive");
        return src;
    }
    std::array<double, 12> a{};
    const char* names[] = {"alpha", "beta", "gamma", "a3", "a4", "b4", "a5", "b5", "a6", "b6", "c6", "d6"};
    for (std::size_t j = 0; j < 12; ++j) a[j] = cfg.number("coeffs", names[j], 0.0);
    src.explicit_coeffs = lcb::LandauCoeffs::from_array(a);
    return src;
}

lcb::LandauCoeffs landau_coeffs(const ModelSource& src) {
    if (!src.from_model) return src.explicit_coeffs;
    auto ent = lcb::kkls_coefficients(6, src.nodes);
    return lcb::physical_coeffs(lcb::coeffs_from_Tlambda(src.cone), src.kT, ent);
}

lcb::NormalFormParams normal_form(const RunConfig& cfg, const std::string& section) {
    lcb::NormalFormParams p;
    p.e2 = cfg.number(section, "e2", 0);
    p.e3 = cfg.number(section, "e3", 0);
    p.e4 = cfg.number(section, "e4", 0);
    p.e5 = cfg.number(section, "e5", 0);
    p.e6 = cfg.number(section, "e6", 0);
    p.e8 = cfg.number(section, "e8", 0);
    p.m = cfg.number(section, "m", 1);
    p.n = cfg.number(section, "n", 1);
    return p;
}

std::uint64_t seed(const RunConfig& cfg, std::uint64_t fallback) {
    auto v = cfg.number("run", "seed");
    if (!v) return fallback;
    if (*v < 0 || *v != static_cast<double>(static_cast<std::uint64_t>(*v))) cfg.fail("run", "seed", "seed must be a non-negative integer");
    return static_cast<std::uint64_t>(*v);
}

}  // namespace lcbcli

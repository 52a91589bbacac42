#pragma once

// INI-style run configuration. Sections and keys are fixed (see FORMATS.md);
// anything unknown is rejected with its line number.

#include <boost/property_tree/ptree.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "lcb/critpoints.hpp"
#include "lcb/errors.hpp"
#include "lcb/landau.hpp"

namespace lcbcli {

class ConfigError : public lcb::Error {
public:
    using lcb::Error::Error;
};

class RunConfig {
public:
    RunConfig() = default;
    static RunConfig load(const std::string& path);
    static RunConfig from_string(const std::string& text, const std::string& name = "<string>");

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;
    std::optional<double> number(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key, double fallback) const;
    double require(const std::string& section, const std::string& key) const;
    int integer(const std::string& section, const std::string& key, int fallback) const;
    std::optional<std::string> text(const std::string& section, const std::string& key) const;
    std::array<double, 3> triple(const std::string& section, const std::string& key) const;

    // "name:line: msg"
    [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& msg) const;

    const std::string& name() const { return name_; }

private:
    void validate() const;
    int line_of(const std::string& section, const std::string& key) const;

    std::string name_;
    boost::property_tree::ptree tree_;
    std::map<std::string, int> lines_;  // "section.key" and "section" -> 1-based line
};

// Where the Landau coefficients come from: (T, U0, lambda, kT) or alpha..d6.
struct ModelSource {
    bool from_model = false;
    lcb::ConeParams cone;
    double kT = 0;
    int nodes = 16;
    lcb::LandauCoeffs explicit_coeffs;
};
ModelSource model_source(const RunConfig& cfg);

// Full coefficient set; the model path runs the entropy fit.
lcb::LandauCoeffs landau_coeffs(const ModelSource& src);

// Normal-form parameters from a section (defaults 0, m = n = 1).
lcb::NormalFormParams normal_form(const RunConfig& cfg, const std::string& section);

std::uint64_t seed(const RunConfig& cfg, std::uint64_t fallback);

}  // namespace lcbcli

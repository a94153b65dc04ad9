#pragma once

// JSON configuration schema for the CLI. Function specs are a tagged union
// on "kind"; tabulated functions load their samples from a two-column CSV.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlaplace/function_spec.hpp"
#include "qlaplace/inversion.hpp"
#include "qlaplace/partition.hpp"
#include "qlaplace/quadrature.hpp"
#include "qlaplace/transform.hpp"

namespace qlaplace::cli {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::vector<std::pair<double, double>> load_samples_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open samples file: " + path);
    std::vector<std::pair<double, double>> samples;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream ls(line);
        double x, f;
        if (!(ls >> x >> f)) {
            if (samples.empty()) continue;  // tolerate a header line
            throw ConfigError("bad sample line in " + path + ": " + line);
        }
        samples.emplace_back(x, f);
    }
    return samples;
}

inline FunctionSpec parse_function(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("function: expected an object with a \"kind\" tag");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "constant") return FunctionSpec::constant(j.at("c").get<double>());
        if (kind == "heaviside_step")
            return FunctionSpec::heaviside_step(j.value("reflected", false));
        if (kind == "scaled_step")
            return FunctionSpec::scaled_step(j.at("c").get<double>());
        if (kind == "power_window")
            return FunctionSpec::power_window(
                j.at("lambda").get<double>(), j.at("beta").get<double>(),
                j.at("a").get<double>(), j.at("b").get<double>());
        if (kind == "q_gaussian")
            return FunctionSpec::q_gaussian_density(
                j.at("alpha").get<double>(), QIndex(j.at("qprime").get<double>()));
        if (kind == "q_exp_density")
            return FunctionSpec::q_exp_density(j.at("alpha").get<double>());
        if (kind == "tabulated") {
            if (j.contains("csv"))
                return FunctionSpec::tabulated(load_samples_csv(j.at("csv").get<std::string>()));
            std::vector<std::pair<double, double>> samples;
            for (const auto& s : j.at("samples"))
                samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
            return FunctionSpec::tabulated(std::move(samples));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("function: ") + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("function: ") + e.what());
    }
    throw ConfigError("function: unknown kind \"" + kind + "\"");
}

inline ComplexPoint parse_point(const json& j) {
    if (j.is_number()) return ComplexPoint(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2)
        return ComplexPoint(j.at(0).get<double>(), j.at(1).get<double>());
    if (j.is_object())
        return ComplexPoint(j.value("re", 0.0), j.value("im", 0.0));
    throw ConfigError("p grid entry: expected number, [re, im] or {re, im}");
}

inline QuadratureConfig parse_quadrature(const json& j) {
    QuadratureConfig cfg;
    if (j.is_null()) return cfg;
    cfg.rel_tol = j.value("rel_tol", cfg.rel_tol);
    cfg.abs_tol = j.value("abs_tol", cfg.abs_tol);
    cfg.max_subdivisions = j.value("max_subdivisions", cfg.max_subdivisions);
    if (j.contains("tail_policy")) {
        std::string p = j.at("tail_policy").get<std::string>();
        if (p == "compactify")
            cfg.tail_policy = QuadratureConfig::TailPolicy::compactify;
        else if (p == "power_law_extrapolate")
            cfg.tail_policy = QuadratureConfig::TailPolicy::power_law_extrapolate;
        else
            throw ConfigError("quadrature: unknown tail_policy \"" + p + "\"");
    }
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_subdivisions < 1)
        throw ConfigError("quadrature: tolerances must be positive, max_subdivisions >= 1");
    return cfg;
}

inline Variant parse_variant(const std::string& v) {
    if (v == "bilateral") return Variant::bilateral;
    if (v == "unilateral") return Variant::unilateral;
    if (v == "fixed") return Variant::fixed;
    if (v == "class") return Variant::equivalence_class;
    if (v == "classical") return Variant::classical;
    if (v == "partition") return Variant::partition;
    throw ConfigError("unknown variant \"" + v + "\"");
}

struct SweepRequest {
    FunctionSpec function;
    Variant variant;
    std::vector<ComplexPoint> p_grid;
    std::vector<double> q_grid;
    bool compare = false;
    bool series1 = false;
    QuadratureConfig quadrature;
};

inline SweepRequest parse_sweep_request(const json& j) {
    if (!j.is_object()) throw ConfigError("sweep config must be an object");
    if (!j.contains("function")) throw ConfigError("sweep config: missing \"function\"");
    if (!j.contains("variant")) throw ConfigError("sweep config: missing \"variant\"");
    SweepRequest req{parse_function(j.at("function")),
                     parse_variant(j.at("variant").get<std::string>()),
                     {},
                     {},
                     j.value("compare", false),
                     j.value("series1", false),
                     parse_quadrature(j.contains("quadrature") ? j.at("quadrature")
                                                               : json(nullptr))};
    if (!j.contains("p_grid") || !j.at("p_grid").is_array() || j.at("p_grid").empty())
        throw ConfigError("sweep config: p_grid must be a non-empty array");
    for (const auto& e : j.at("p_grid")) req.p_grid.push_back(parse_point(e));
    if (!j.contains("q_grid") || !j.at("q_grid").is_array() || j.at("q_grid").empty())
        throw ConfigError("sweep config: q_grid must be a non-empty array");
    for (const auto& e : j.at("q_grid")) {
        double q = e.get<double>();
        if (!QIndex::admissible(q))
            throw ConfigError("sweep config: q_grid entries must lie in [1, 2)");
        req.q_grid.push_back(q);
    }
    if (req.variant == Variant::partition) {
        // the function doubles as a density of states; reuse its validation
        try {
            DensityOfStates::make(req.function);
        } catch (const std::domain_error& e) {
            throw ConfigError(std::string("partition variant: ") + e.what());
        }
    }
    return req;
}

struct InvertRequest {
    FunctionSpec function;
    double epsilon;
    std::vector<double> t_grid;
    InversionConfig inversion;
};

inline InvertRequest parse_invert_request(const json& j) {
    if (!j.is_object()) throw ConfigError("invert config must be an object");
    if (!j.contains("function")) throw ConfigError("invert config: missing \"function\"");
    InvertRequest req{parse_function(j.at("function")), j.value("epsilon", 1e-3), {}, {}};
    if (!(req.epsilon > 0.0) || req.epsilon > 1e-2)
        throw ConfigError("invert config: epsilon must be in (0, 1e-2]");
    if (!j.contains("t_grid")) throw ConfigError("invert config: missing \"t_grid\"");
    const auto& tg = j.at("t_grid");
    if (tg.is_array()) {
        for (const auto& e : tg) req.t_grid.push_back(e.get<double>());
    } else if (tg.is_object()) {
        double lo = tg.at("min").get<double>();
        double hi = tg.at("max").get<double>();
        int n = tg.at("count").get<int>();
        if (n < 1 || !(hi >= lo)) throw ConfigError("invert config: bad t_grid range");
        for (int i = 0; i < n; ++i)
            req.t_grid.push_back(n == 1 ? lo : lo + i * (hi - lo) / (n - 1));
    } else {
        throw ConfigError("invert config: t_grid must be an array or {min,max,count}");
    }
    if (req.t_grid.empty()) throw ConfigError("invert config: empty t_grid");
    for (double t : req.t_grid)
        if (!(t > 0.0)) throw ConfigError("invert config: t grid must be > 0");
    if (j.contains("inversion")) {
        const auto& ji = j.at("inversion");
        if (ji.contains("method")) {
            std::string m = ji.at("method").get<std::string>();
            if (m == "talbot")
                req.inversion.method = InversionConfig::Method::talbot;
            else if (m == "bromwich_trapezoid")
                req.inversion.method = InversionConfig::Method::bromwich_trapezoid;
            else
                throw ConfigError("invert config: unknown method \"" + m + "\"");
        }
        req.inversion.node_count = ji.value("node_count", req.inversion.node_count);
        req.inversion.contour_scale = ji.value("contour_scale", req.inversion.contour_scale);
        if (req.inversion.node_count < 8)
            throw ConfigError("invert config: node_count must be >= 8");
        if (!(req.inversion.contour_scale > 0.0))
            throw ConfigError("invert config: contour_scale must be > 0");
    }
    return req;
}

}  // namespace qlaplace::cli

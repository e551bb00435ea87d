#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "homega/blaschke.hpp"
#include "homega/errors.hpp"
#include "homega/innercheck.hpp"
#include "homega/series.hpp"
#include "homega/weights.hpp"

namespace homega {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json weight_to_json(const WeightSequence& w) {
    switch (w.kind()) {
        case WeightKind::Hardy: return {{"kind", "hardy"}};
        case WeightKind::Bergman: return {{"kind", "bergman"}};
        case WeightKind::Dirichlet: return {{"kind", "dirichlet"}};
        case WeightKind::PowerKernel: return {{"kind", "power"}, {"gamma", w.gamma()}};
        case WeightKind::Explicit: return {{"kind", "explicit"}, {"omega", w.explicit_values()}};
        case WeightKind::Perturbed: {
            json overrides = json::object();
            for (const auto& [n, v] : w.overrides()) overrides[std::to_string(n)] = v;
            return {{"kind", "perturbed"},
                    {"base", weight_to_json(*w.base())},
                    {"overrides", overrides}};
        }
    }
    throw InvalidSpec("unknown weight kind");
}

inline WeightSequence weight_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw InvalidSpec("weight descriptor needs a string field 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "hardy") return WeightSequence::hardy();
    if (kind == "bergman") return WeightSequence::bergman();
    if (kind == "dirichlet") return WeightSequence::dirichlet();
    if (kind == "power") {
        if (!j.contains("gamma") || !j["gamma"].is_number())
            throw InvalidSpec("power weight needs a numeric field 'gamma'");
        return WeightSequence::power_kernel(j["gamma"].get<double>());
    }
    if (kind == "explicit") {
        if (!j.contains("omega") || !j["omega"].is_array())
            throw InvalidSpec("explicit weight needs an array field 'omega'");
        std::vector<double> omega;
        for (const auto& x : j["omega"]) {
            if (!x.is_number()) throw InvalidSpec("field 'omega' must hold numbers");
            omega.push_back(x.get<double>());
        }
        return WeightSequence::explicit_list(std::move(omega));
    }
    if (kind == "perturbed") {
        if (!j.contains("base"))
            throw InvalidSpec("perturbed weight needs a field 'base'");
        if (!j.contains("overrides") || !j["overrides"].is_object())
            throw InvalidSpec("perturbed weight needs an object field 'overrides'");
        std::map<long, double> overrides;
        for (const auto& [key, val] : j["overrides"].items()) {
            if (!val.is_number())
                throw InvalidSpec("field 'overrides' must map indices to numbers");
            try {
                overrides[std::stol(key)] = val.get<double>();
            } catch (const std::exception&) {
                throw InvalidSpec("override key '" + key + "' is not an index");
            }
        }
        return WeightSequence::perturbed(weight_from_json(j["base"]), std::move(overrides));
    }
    throw InvalidSpec("unknown weight kind '" + kind + "'");
}

inline json series_to_json(const SeriesFn& f) {
    json coeffs = json::array();
    for (const Complex& c : f.coeffs()) coeffs.push_back({c.real(), c.imag()});
    return {{"weight", weight_to_json(f.weight())}, {"coeffs", coeffs}};
}

inline SeriesFn series_from_json(const json& j) {
    if (!j.is_object() || !j.contains("weight"))
        throw InvalidSpec("series needs a field 'weight'");
    if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
        throw InvalidSpec("series needs a nonempty array field 'coeffs'");
    const WeightSequence w = weight_from_json(j["weight"]);
    std::vector<Complex> coeffs;
    for (const auto& c : j["coeffs"]) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
            throw InvalidSpec("each coefficient must be a [re, im] pair");
        coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    }
    return SeriesFn(w, std::move(coeffs));
}

inline json blaschke_spec_to_json(const BlaschkeSpec& spec) {
    json zeros = json::array();
    for (const auto& pz : spec.zeros)
        zeros.push_back({{"z", {pz.z.real(), pz.z.imag()}}, {"mult", pz.multiplicity}});
    return {{"d0", spec.d0}, {"zeros", zeros}};
}

inline BlaschkeSpec blaschke_spec_from_json(const json& j) {
    if (!j.is_object()) throw InvalidSpec("zero prescription must be an object");
    BlaschkeSpec spec;
    if (j.contains("d0")) {
        if (!j["d0"].is_number_integer())
            throw InvalidSpec("field 'd0' must be an integer");
        spec.d0 = j["d0"].get<long>();
    }
    if (j.contains("zeros")) {
        if (!j["zeros"].is_array()) throw InvalidSpec("field 'zeros' must be an array");
        for (const auto& z : j["zeros"]) {
            if (!z.contains("z") || !z["z"].is_array() || z["z"].size() != 2)
                throw InvalidSpec("each zero needs a field 'z' holding [re, im]");
            PrescribedZero pz;
            pz.z = Complex(z["z"][0].get<double>(), z["z"][1].get<double>());
            if (z.contains("mult")) {
                if (!z["mult"].is_number_integer())
                    throw InvalidSpec("field 'mult' must be an integer");
                pz.multiplicity = z["mult"].get<long>();
            }
            spec.zeros.push_back(pz);
        }
    }
    spec.validate();
    return spec;
}

inline json inner_report_to_json(const InnerReport& rep) {
    return {{"norm_dev", rep.norm_dev},
            {"ortho_defect", rep.ortho_defect},
            {"phi_k_drift", rep.phi_k_drift},
            {"mstar_residual", rep.mstar_residual},
            {"expansive_violations", rep.expansive_violations},
            {"verdict", to_string(rep.verdict)},
            {"tol", rep.tol}};
}

/// CSV table of phi_k samples along the rays lambda = t <z^k f, f>, one row
/// per (k, lambda) pair. For inner functions every column of phi values is
/// flat.
inline std::string phi_table_csv(const SeriesFn& f, long k_max = 8, long samples = 9) {
    std::string csv = "# homega phi v1\nk,re_lambda,im_lambda,phi\n";
    char buf[160];
    for (long k = 1; k <= k_max; ++k) {
        const Complex gamma = ortho_coefficient(f, k);
        for (long i = 0; i < samples; ++i) {
            const double t = samples > 1 ? -1.0 + 2.0 * static_cast<double>(i) /
                                                      static_cast<double>(samples - 1)
                                         : 0.0;
            const Complex lambda = t * gamma;
            std::snprintf(buf, sizeof(buf), "%ld,%.12g,%.12g,%.12g\n", k, lambda.real(),
                          lambda.imag(), phi_k_raw(f, k, lambda));
            csv += buf;
        }
    }
    return csv;
}

} // namespace homega

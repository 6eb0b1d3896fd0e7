#include "sbq/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sbq {

using nlohmann::json;

const char* to_string(DistFamily f) {
    switch (f) {
        case DistFamily::Exponential: return "exponential";
        case DistFamily::Deterministic: return "deterministic";
        case DistFamily::Uniform: return "uniform";
        case DistFamily::Lognormal: return "lognormal";
    }
    return "?";
}

DistFamily dist_family_from_string(const std::string& s) {
    if (s == "exponential") return DistFamily::Exponential;
    if (s == "deterministic") return DistFamily::Deterministic;
    if (s == "uniform") return DistFamily::Uniform;
    if (s == "lognormal") return DistFamily::Lognormal;
    throw std::invalid_argument("unknown distribution family: " + s);
}

namespace {

void check_family(std::vector<std::string>& out, const std::string& label,
                  const char* which, DistFamily f, double scv) {
    char buf[160];
    if (scv < 0.0) {
        std::snprintf(buf, sizeof buf, "class %s: %s_scv negative", label.c_str(), which);
        out.emplace_back(buf);
        return;
    }
    if (f == DistFamily::Deterministic && scv != 0.0) {
        std::snprintf(buf, sizeof buf, "class %s: deterministic %s requires scv = 0",
                      label.c_str(), which);
        out.emplace_back(buf);
    }
    if (f == DistFamily::Exponential && scv != 1.0) {
        std::snprintf(buf, sizeof buf, "class %s: exponential %s requires scv = 1",
                      label.c_str(), which);
        out.emplace_back(buf);
    }
    // Mean-1 uniform caps the attainable scv at 1/3.
    if (f == DistFamily::Uniform && scv > 1.0 / 3.0) {
        std::snprintf(buf, sizeof buf, "class %s: uniform %s supports scv <= 1/3",
                      label.c_str(), which);
        out.emplace_back(buf);
    }
}

}  // namespace

std::vector<std::string> validate(const SystemSpec& spec) {
    std::vector<std::string> v;
    char buf[160];
    if (spec.classes.empty()) v.emplace_back("no classes defined");
    if (!(spec.b > 0.0)) v.emplace_back("buffer size b must be positive");
    if (!(spec.alpha > 0.0)) v.emplace_back("discount alpha must be positive");
    if (!(spec.criticality_tol >= 0.0)) v.emplace_back("criticality_tol must be nonnegative");

    double rho_sum = 0.0;
    for (const auto& c : spec.classes) {
        if (!(c.lambda > 0.0)) v.push_back("class " + c.label + ": lambda must be positive");
        if (!(c.mu > 0.0)) v.push_back("class " + c.label + ": mu must be positive");
        if (!(c.h > 0.0)) v.push_back("class " + c.label + ": h must be positive");
        if (!(c.r > 0.0)) v.push_back("class " + c.label + ": r must be positive");
        check_family(v, c.label, "ia", c.ia_family, c.ia_scv);
        check_family(v, c.label, "st", c.st_family, c.st_scv);
        if (c.lambda > 0.0 && c.mu > 0.0) rho_sum += c.lambda / c.mu;
    }

    if (!spec.classes.empty() && std::abs(rho_sum - 1.0) > spec.criticality_tol) {
        std::snprintf(buf, sizeof buf,
                      "critical load violated: sum rho = %.6f differs from 1 by more than %g",
                      rho_sum, spec.criticality_tol);
        v.emplace_back(buf);
    }

    // The accumulation recursion divides by theta differences; ties are
    // rejected rather than perturbed.
    for (std::size_t i = 0; i < spec.classes.size(); ++i)
        for (std::size_t k = i + 1; k < spec.classes.size(); ++k)
            if (spec.classes[i].mu > 0.0 && spec.classes[i].mu == spec.classes[k].mu) {
                std::snprintf(buf, sizeof buf, "theta not distinct: classes %s and %s",
                              spec.classes[i].label.c_str(), spec.classes[k].label.c_str());
                v.emplace_back(buf);
            }
    return v;
}

DerivedParams derive(const SystemSpec& spec) {
    auto findings = validate(spec);
    if (!findings.empty()) {
        std::string msg = "invalid spec:";
        for (const auto& f : findings) msg += "\n  - " + f;
        throw std::invalid_argument(msg);
    }

    DerivedParams d;
    const std::size_t I = spec.classes.size();
    d.theta.resize(I);
    d.rho.resize(I);
    d.m.resize(I);
    d.sigma2.resize(I);
    for (std::size_t i = 0; i < I; ++i) {
        const auto& c = spec.classes[i];
        d.theta[i] = 1.0 / c.mu;
        d.rho[i] = c.lambda / c.mu;
        d.m[i] = c.lambda_hat - d.rho[i] * c.mu_hat;
        d.sigma2[i] = c.lambda * (c.ia_scv + c.st_scv);
        d.m_bar += d.theta[i] * d.m[i];
        d.sigma2_bar += d.theta[i] * d.theta[i] * d.sigma2[i];
        if (d.theta[i] > d.theta[d.argmax_theta]) d.argmax_theta = i;
    }
    d.x_max = spec.b * d.theta[d.argmax_theta];
    return d;
}

namespace {

ClassSpec class_from_json(const json& j) {
    ClassSpec c;
    c.label = j.at("label").get<std::string>();
    c.lambda = j.at("lambda").get<double>();
    c.mu = j.at("mu").get<double>();
    c.lambda_hat = j.value("lambda_hat", 0.0);
    c.mu_hat = j.value("mu_hat", 0.0);
    c.h = j.at("h").get<double>();
    c.r = j.at("r").get<double>();
    c.ia_scv = j.value("ia_scv", 1.0);
    c.st_scv = j.value("st_scv", 1.0);
    c.ia_family = dist_family_from_string(j.value("ia_family", std::string("exponential")));
    c.st_family = dist_family_from_string(j.value("st_family", std::string("exponential")));
    return c;
}

}  // namespace

SystemSpec parse_spec_json(const std::string& text) {
    json j = json::parse(text);  // nlohmann reports line/byte on failure
    SystemSpec spec;
    for (const auto& jc : j.at("classes")) spec.classes.push_back(class_from_json(jc));
    spec.b = j.at("b").get<double>();
    spec.alpha = j.at("alpha").get<double>();
    spec.criticality_tol = j.value("criticality_tol", 0.01);
    return spec;
}

SystemSpec load_spec_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec_json(ss.str());
}

std::string spec_to_json(const SystemSpec& spec) {
    json j;
    j["classes"] = json::array();
    for (const auto& c : spec.classes) {
        json jc;
        jc["label"] = c.label;
        jc["lambda"] = c.lambda;
        jc["mu"] = c.mu;
        jc["lambda_hat"] = c.lambda_hat;
        jc["mu_hat"] = c.mu_hat;
        jc["h"] = c.h;
        jc["r"] = c.r;
        jc["ia_scv"] = c.ia_scv;
        jc["st_scv"] = c.st_scv;
        jc["ia_family"] = to_string(c.ia_family);
        jc["st_family"] = to_string(c.st_family);
        j["classes"].push_back(jc);
    }
    j["b"] = spec.b;
    j["alpha"] = spec.alpha;
    j["criticality_tol"] = spec.criticality_tol;
    return j.dump(2);
}

}  // namespace sbq

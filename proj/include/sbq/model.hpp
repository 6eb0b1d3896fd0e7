#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sbq {

enum class DistFamily { Exponential, Deterministic, Uniform, Lognormal };

const char* to_string(DistFamily f);
DistFamily dist_family_from_string(const std::string& s);

// One task class: first/second-order rates, costs, and the squared
// coefficients of variation driving the simulation distributions.
struct ClassSpec {
    std::string label;
    double lambda = 0.0;      // first-order arrival rate
    double mu = 0.0;          // first-order service rate
    double lambda_hat = 0.0;  // second-order arrival perturbation
    double mu_hat = 0.0;      // second-order service perturbation
    double h = 0.0;           // holding cost per task per unit time
    double r = 0.0;           // rejection cost per task
    double ia_scv = 1.0;      // squared coefficient of variation, inter-arrivals
    double st_scv = 1.0;      // squared coefficient of variation, service
    DistFamily ia_family = DistFamily::Exponential;
    DistFamily st_family = DistFamily::Exponential;
};

struct SystemSpec {
    std::vector<ClassSpec> classes;
    double b = 0.0;                 // scaled shared-buffer capacity (tasks)
    double alpha = 0.0;             // discount rate
    double criticality_tol = 0.01;  // tolerance on |sum rho - 1|

    std::size_t num_classes() const { return classes.size(); }
};

// Heavy-traffic quantities derived from a SystemSpec.
struct DerivedParams {
    std::vector<double> theta;   // 1/mu_i
    std::vector<double> rho;     // lambda_i/mu_i
    std::vector<double> m;       // lambda_hat_i - rho_i*mu_hat_i
    std::vector<double> sigma2;  // lambda_i*(ia_scv + st_scv)
    double m_bar = 0.0;          // theta . m
    double sigma2_bar = 0.0;     // sum theta_i^2 sigma_i^2
    double x_max = 0.0;          // b * max_i theta_i
    std::size_t argmax_theta = 0;
};

// Checks the critical-load regime and basic sanity; returns human-readable
// findings, empty when the spec is usable.
std::vector<std::string> validate(const SystemSpec& spec);

// Populates DerivedParams. Throws std::invalid_argument when validate()
// reports findings.
DerivedParams derive(const SystemSpec& spec);

// JSON instance files (see README for the schema).
SystemSpec load_spec_json(const std::string& path);
SystemSpec parse_spec_json(const std::string& text);
std::string spec_to_json(const SystemSpec& spec);

}  // namespace sbq

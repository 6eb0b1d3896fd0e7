#pragma once

#include <cstddef>
#include <vector>

#include "sbq/holding_cost.hpp"
#include "sbq/model.hpp"

namespace sbq {

// Interval index plus the two task counts reconstructing a workload level on
// the margin curve: w = theta_{p(j-1)} chi_l + theta_{p(j)} chi_h.
struct Representation {
    std::size_t j = 1;    // 1-based interval index in {1..J}
    double chi_l = 0.0;   // count at accumulation position j-1 (0 when j == 1)
    double chi_h = 0.0;   // count at accumulation position j
};

// Workload-dependent split of the margin epsilon between the two active
// classes.
struct Margins {
    double eps_l = 0.0;
    double eps_h = 0.0;
};

struct ServiceDecision {
    std::vector<double> B;  // effort fractions, sum <= 1
};

struct PrioritySets {
    std::vector<std::size_t> L, H;        // low / high priority classes
    std::vector<std::size_t> Lp, Hp;      // same with empty queues dropped
};

enum class AdmitDecision { Accept, RejectPolicy, RejectForced };

// Frozen policy data: margins, rejection boundary, order, and the margin
// curve. Immutable after construction; all policy calls are pure functions of
// (config, state).
class PolicyConfig {
public:
    PolicyConfig(const SystemSpec& spec, const DerivedParams& d,
                 const AccumulationOrder& order, const RejectionRule& rejection,
                 double x_star, double epsilon);

    const SystemSpec& spec() const { return *spec_; }
    const DerivedParams& derived() const { return derived_; }
    const AccumulationOrder& order() const { return order_; }
    const RejectionRule& rejection() const { return rejection_; }
    double epsilon() const { return epsilon_; }
    double a() const { return a_; }
    double a_star() const { return a_star_; }
    double x_star() const { return x_star_; }
    double theta_J() const { return theta_J_; }
    // Upper end of the evaluable curve domain, b*theta_{p(J)}.
    double curve_hi() const { return theta_J_ * spec_->b; }

    // Unique triplet for w in [0, theta_{p(J)} * a).
    Representation represent(double w) const;

    // Three-case margin split driven by the unmargined curve values at w.
    Margins margins(double w) const;

    // Margin curve gamma^a: the representation point on the a-face for
    // w < theta_{p(J)}*a, then the single-class ray interpolating the last
    // coordinate from a up to b. theta . gamma_a(w) == w on [0, b*theta_{p(J)}].
    std::vector<double> gamma_a(double w) const;

    PrioritySets priority_sets(const std::vector<double>& x, double w) const;
    ServiceDecision allocate(const std::vector<double>& x, double w) const;

    // Arrival of class i at scaled state x with workload w in the n-th system.
    AdmitDecision admit(std::size_t i, const std::vector<double>& x, double w,
                        double sqrt_n) const;

private:
    const SystemSpec* spec_;
    DerivedParams derived_;
    AccumulationOrder order_;
    RejectionRule rejection_;
    double epsilon_;
    double a_;
    double a_star_;
    double x_star_;
    double theta_J_;
    std::vector<double> theta_p_;  // theta_{p(0..J)} with theta_{p(0)} = 0
};

// Default margin when none is given: b/25.
double default_epsilon(double b);

}  // namespace sbq

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sbq/model.hpp"
#include "sbq/piecewise.hpp"

namespace sbq {

// Class rejected at the free boundary and its cost per unit of workload.
struct RejectionRule {
    std::size_t i_star = 0;  // class index (0-based)
    double r_bar = 0.0;      // min_i r_i * mu_i
};

// One step of the accumulation recursion: the candidate ratios that were
// compared and the winner.
struct AccumulationStep {
    std::size_t from;                                        // previous class, or npos for the origin
    std::vector<std::pair<std::size_t, double>> candidates;  // (class, incremental cost ratio)
    std::size_t chosen;
    double ratio;
};

// Order in which classes fill the shared buffer as workload grows.
struct AccumulationOrder {
    std::vector<std::size_t> p;      // p[0..J-1], original class indices
    std::vector<std::size_t> E;      // accumulated classes (= p as a set)
    std::vector<std::size_t> D;      // never-accumulated classes
    std::vector<double> w_hat;       // w_hat[0] = 0, w_hat[j] = b*theta_{p(j)}
    std::vector<AccumulationStep> steps;
    std::size_t J() const { return p.size(); }

    // Position of class i in the order, or J() when i is in D.
    std::size_t position(std::size_t i) const {
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p[j] == i) return j;
        return p.size();
    }
};

RejectionRule rejection_rule(const SystemSpec& spec, const DerivedParams& d);

// Successive minimal-incremental-cost-ratio recursion from the virtual origin
// (h=0, theta=0). Ties break toward the lowest class index. Requires distinct
// theta.
AccumulationOrder accumulation_order(const SystemSpec& spec, const DerivedParams& d);

// One-dimensional holding cost on [0, x_max], materialized as a breakpoint
// table: value b*h_{p(j)} at w_hat[j].
PiecewiseLinear h_bar(const SystemSpec& spec, const DerivedParams& d,
                      const AccumulationOrder& order);

// Cheapest queue configuration with workload w; at most two nonzero
// components, at consecutive accumulation positions. Original class indexing.
std::vector<double> gamma(const SystemSpec& spec, const DerivedParams& d,
                          const AccumulationOrder& order, double w);

// Same vertices as gamma, materialized once for interpolation-based callers.
PiecewiseCurve gamma_curve(const SystemSpec& spec, const DerivedParams& d,
                           const AccumulationOrder& order);

// Exhaustive vertex enumeration of min{h.x : x >= 0, sum x <= b, theta.x = w}.
// Exact for this polytope (single classes and full-buffer pairs are the only
// vertices); independent of the recursion above, used as a test oracle.
struct LpVertex {
    double value = 0.0;
    std::vector<double> x;
};
LpVertex lp_oracle(const SystemSpec& spec, const DerivedParams& d, double w);

}  // namespace sbq

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sbq/piecewise.hpp"

namespace sbq {

// Piecewise-constant right-continuous path on a uniform time grid.
struct Path {
    double dt = 0.0;
    std::vector<double> values;

    std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
    double time_at(std::size_t k) const { return static_cast<double>(k) * dt; }
};

// Output of the two-sided Skorokhod map on [a,b]: constrained path plus the
// nondecreasing pushing processes at the two boundaries.
struct ReflectionTriple {
    Path phi;
    Path eta1;  // lower-boundary push
    Path eta2;  // upper-boundary push
};

// Discrete two-sided Skorokhod map: increments of psi are applied sequentially
// and clamped to [a,b], crediting the clamped amount to eta1/eta2. Exact for
// piecewise-constant inputs.
ReflectionTriple skorokhod_map(const Path& psi, double a, double b);

struct RbmPaths {
    Path X;  // reflected workload
    Path Y;  // lower push
    Path Z;  // upper push (rejections)
};

// Euler path of x0 + W with W increments ~ Normal(m_bar*dt, sigma2_bar*dt),
// reflected into [0, x_star]. Increments come from the inverse normal CDF on a
// seeded xoshiro256++ stream, so runs are reproducible bit-for-bit.
RbmPaths simulate_rbm(double x0_bar, double m_bar, double sigma2_bar, double x_star,
                      double horizon, double dt, std::uint64_t seed);

// Discounted cost of one path: exact per-interval discount integral of
// hbar(X) plus the discounted rejection increments weighted by r_bar.
double bcp_cost(const RbmPaths& paths, const PiecewiseLinear& hbar, double r_bar,
                double alpha);

struct RbmCostEstimate {
    double mean = 0.0;
    double se = 0.0;
    std::size_t replications = 0;
};

// Replication r uses the stream mix_seed(seed, stream_id, r); replications are
// independent and may run on several threads, merged by replication index.
RbmCostEstimate rbm_cost_estimate(double x0_bar, double m_bar, double sigma2_bar,
                                  double x_star, const PiecewiseLinear& hbar,
                                  double r_bar, double alpha, double horizon, double dt,
                                  std::uint64_t seed, std::size_t replications,
                                  unsigned threads = 1);

// dt rule from the solve scale: 1e-3 * min(1, x_star^2 / sigma2_bar).
double default_rbm_dt(double x_star, double sigma2_bar);

}  // namespace sbq

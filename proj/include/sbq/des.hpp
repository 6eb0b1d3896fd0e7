#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sbq/model.hpp"
#include "sbq/policy.hpp"

namespace sbq {

// Event-level state of the n-th pre-limit system (unscaled task counts).
struct SimState {
    std::vector<std::int64_t> X;      // queue lengths
    std::vector<double> residual;     // remaining dedicated-server time, head-of-line task
    std::vector<bool> in_service;     // head-of-line task has a drawn requirement
    std::vector<std::int64_t> A, D, Z;  // cumulative arrivals / departures / rejections
    std::vector<double> T_cum;        // cumulative allocated effort per class
    double clock = 0.0;
};

struct RejectionCounts {
    std::vector<std::int64_t> policy;
    std::vector<std::int64_t> forced;
    std::int64_t total_policy = 0;
    std::int64_t total_forced = 0;
};

struct SimResult {
    double J_n = 0.0;         // discounted holding + rejection cost
    double ssc_max = 0.0;     // sup_t ||Xhat - gamma_a(workload)||_1 over samples
    std::vector<double> sample_times;
    std::vector<std::vector<double>> trace;  // scaled queue lengths per sample
    std::vector<double> workload;            // theta^n . Xhat per sample
    std::vector<double> ssc_series;          // ||Delta||_1 per sample
    RejectionCounts rejections;
    std::int64_t events = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double horizon = 0.0;
    std::vector<std::string> warnings;
};

struct SimOptions {
    std::size_t n = 100;
    double horizon = 3.0;
    double sample_dt = 0.01;
    std::uint64_t seed = 1;
    // Scaled initial queue lengths; rounded to the task lattice. Empty = start
    // from an empty system.
    std::vector<double> x0_scaled;
};

// One replication of the n-th system under the policy: renewal arrivals with
// rates n*lambda + sqrt(n)*lambda_hat, head-of-line effort-sharing service,
// admission via the policy, exact inter-event discounting.
SimResult run(const SystemSpec& spec, const PolicyConfig& cfg, const SimOptions& opt);

// sup-norm distance of a sampled trace from the margin curve, evaluated at the
// trace's own workload.
std::pair<double, std::vector<double>> ssc_metric(
    const std::vector<std::vector<double>>& trace, const std::vector<double>& workload,
    const PolicyConfig& cfg, std::vector<std::string>* warnings = nullptr);

struct CostEstimate {
    double mean = 0.0;
    double se = 0.0;
    std::vector<double> per_seed;
};

// Replication mean and standard error of J_n across seeds (>= 10 recommended);
// replications are independent and can run on several threads.
CostEstimate cost_estimate(const SystemSpec& spec, const PolicyConfig& cfg,
                           const SimOptions& base, const std::vector<std::uint64_t>& seeds,
                           unsigned threads = 1);

}  // namespace sbq

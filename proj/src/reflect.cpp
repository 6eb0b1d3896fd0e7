#include "sbq/reflect.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "sbq/rng.hpp"

namespace sbq {

ReflectionTriple skorokhod_map(const Path& psi, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("skorokhod_map: need a < b");
    if (psi.values.empty()) throw std::invalid_argument("skorokhod_map: empty path");
    if (psi.values.front() < a || psi.values.front() > b)
        throw std::invalid_argument("skorokhod_map: initial value outside [a,b]");

    ReflectionTriple out;
    const std::size_t n = psi.values.size();
    out.phi.dt = out.eta1.dt = out.eta2.dt = psi.dt;
    out.phi.values.resize(n);
    out.eta1.values.resize(n);
    out.eta2.values.resize(n);

    double phi = psi.values.front(), e1 = 0.0, e2 = 0.0;
    out.phi.values[0] = phi;
    out.eta1.values[0] = 0.0;
    out.eta2.values[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double raw = phi + (psi.values[k] - psi.values[k - 1]);
        if (raw < a) {
            e1 += a - raw;
            phi = a;
        } else if (raw > b) {
            e2 += raw - b;
            phi = b;
        } else {
            phi = raw;
        }
        out.phi.values[k] = phi;
        out.eta1.values[k] = e1;
        out.eta2.values[k] = e2;
    }
    return out;
}

RbmPaths simulate_rbm(double x0_bar, double m_bar, double sigma2_bar, double x_star,
                      double horizon, double dt, std::uint64_t seed) {
    if (!(dt > 0.0) || !(horizon > 0.0))
        throw std::invalid_argument("simulate_rbm: need positive dt and horizon");
    if (!(x_star > 0.0) || x0_bar < 0.0 || x0_bar > x_star)
        throw std::invalid_argument("simulate_rbm: need 0 <= x0 <= x_star, x_star > 0");

    const std::size_t steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-12));
    Path psi;
    psi.dt = dt;
    psi.values.resize(steps + 1);
    psi.values[0] = x0_bar;

    Rng rng(seed);
    const double drift = m_bar * dt;
    const double scale = std::sqrt(sigma2_bar * dt);
    double w = x0_bar;
    for (std::size_t k = 1; k <= steps; ++k) {
        w += drift + scale * rng.normal();
        psi.values[k] = w;
    }

    ReflectionTriple t = skorokhod_map(psi, 0.0, x_star);
    return RbmPaths{std::move(t.phi), std::move(t.eta1), std::move(t.eta2)};
}

double bcp_cost(const RbmPaths& paths, const PiecewiseLinear& hbar, double r_bar,
                double alpha) {
    const auto& X = paths.X.values;
    const auto& Z = paths.Z.values;
    if (X.size() != Z.size()) throw std::invalid_argument("bcp_cost: mismatched grids");
    const double dt = paths.X.dt;
    if (!(dt > 0.0) || !(alpha > 0.0))
        throw std::invalid_argument("bcp_cost: need positive dt and alpha");

    // X is piecewise constant on [t_k, t_{k+1}); integrate the discount factor
    // exactly over each interval. Z increments are discounted at the sample
    // where they land.
    double cost = 0.0;
    double disc_lo = 1.0;  // e^{-alpha t_k}
    const double step_factor = std::exp(-alpha * dt);
    for (std::size_t k = 0; k + 1 < X.size(); ++k) {
        const double disc_hi = disc_lo * step_factor;
        cost += hbar(X[k]) * (disc_lo - disc_hi) / alpha;
        cost += r_bar * (Z[k + 1] - Z[k]) * disc_hi;
        disc_lo = disc_hi;
    }
    return cost;
}

double default_rbm_dt(double x_star, double sigma2_bar) {
    if (!(sigma2_bar > 0.0)) return 1e-3;
    return 1e-3 * std::min(1.0, x_star * x_star / sigma2_bar);
}

RbmCostEstimate rbm_cost_estimate(double x0_bar, double m_bar, double sigma2_bar,
                                  double x_star, const PiecewiseLinear& hbar,
                                  double r_bar, double alpha, double horizon, double dt,
                                  std::uint64_t seed, std::size_t replications,
                                  unsigned threads) {
    if (replications == 0) throw std::invalid_argument("rbm_cost_estimate: need replications");
    std::vector<double> costs(replications);

    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            const std::uint64_t s = mix_seed(seed, /*stream=*/0x5b31, r);
            RbmPaths p = simulate_rbm(x0_bar, m_bar, sigma2_bar, x_star, horizon, dt, s);
            costs[r] = bcp_cost(p, hbar, r_bar, alpha);
        }
    };

    if (threads <= 1) {
        worker(0, replications);
    } else {
        const unsigned nt = std::min<unsigned>(threads, replications);
        std::vector<std::thread> pool;
        const std::size_t chunk = (replications + nt - 1) / nt;
        for (unsigned t = 0; t < nt; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(replications, lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    double mean = 0.0;
    for (double c : costs) mean += c;
    mean /= static_cast<double>(replications);
    double var = 0.0;
    for (double c : costs) var += (c - mean) * (c - mean);
    var /= replications > 1 ? static_cast<double>(replications - 1) : 1.0;

    RbmCostEstimate est;
    est.mean = mean;
    est.se = std::sqrt(var / static_cast<double>(replications));
    est.replications = replications;
    return est;
}

}  // namespace sbq

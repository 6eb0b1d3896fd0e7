#include "sbq/hjb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sbq {

namespace {

enum class Branch : unsigned char { Pde, Reflect, Reject };

// Tridiagonal LU with partial pivoting (dgttrf/dgttrs style). Pivoting matters
// here: gradient-branch rows can carry a zero diagonal.
struct TridiagPivoted {
    std::vector<double> dl, d, du, du2;
    std::vector<int> swapped;

    // Factor in place; returns false on a (near-)singular pivot.
    bool factor() {
        const std::size_t n = d.size();
        du2.assign(n >= 2 ? n - 2 : 0, 0.0);
        swapped.assign(n >= 1 ? n - 1 : 0, 0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0.0) return false;
                const double mult = dl[i] / d[i];
                dl[i] = mult;
                d[i + 1] -= mult * du[i];
                if (i + 2 < n) {
                    // du2 row i stays zero without a swap
                }
            } else {
                const double mult = d[i] / dl[i];
                swapped[i] = 1;
                std::swap(d[i], dl[i]);  // d[i] now holds the pivot (old dl)
                const double tmp_du = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp_du - mult * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -mult * du[i + 1];
                }
                dl[i] = mult;
            }
        }
        return d[n - 1] != 0.0;
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                std::swap(b[i], b[i + 1]);
                b[i + 1] -= dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n >= 2) {
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        }
        for (std::size_t k = n; k-- > 2;) {
            const std::size_t i = k - 2;
            double acc = b[i] - du[i] * b[i + 1];
            if (i + 2 < n) acc -= du2[i] * b[i + 2];
            b[i] = acc / d[i];
        }
    }
};

struct Row {
    double cl = 0.0, cd = 0.0, cu = 0.0, rhs = 0.0;
};

}  // namespace

std::size_t accumulation_interval(const std::vector<double>& w_hat, double w) {
    std::size_t j = 1;
    while (j + 1 < w_hat.size() && w > w_hat[j]) ++j;
    return j;
}

HJBSolution solve_bellman(const HJBConfig& cfg, const PiecewiseLinear& hbar) {
    if (!(cfg.sigma2_bar > 0.0)) throw std::invalid_argument("solve_bellman: sigma2_bar must be positive");
    if (cfg.N < 100) throw std::invalid_argument("solve_bellman: N >= 100 required");
    if (!(cfg.x_max > 0.0) || !(cfg.alpha > 0.0) || !(cfg.r_bar > 0.0))
        throw std::invalid_argument("solve_bellman: x_max, alpha, r_bar must be positive");

    const std::size_t N = cfg.N;
    const double dw = cfg.x_max / static_cast<double>(N);
    const double tol_abs = cfg.tol_rel * cfg.r_bar * cfg.x_max;

    HJBSolution sol;
    sol.N = N;
    sol.dw = dw;
    sol.r_bar = cfg.r_bar;
    sol.tol = tol_abs;
    sol.grid.resize(N + 1);
    for (std::size_t i = 0; i <= N; ++i) sol.grid[i] = dw * static_cast<double>(i);

    std::vector<double> hv(N + 1);
    double hmax = 0.0;
    for (std::size_t i = 0; i <= N; ++i) {
        hv[i] = hbar(std::min(sol.grid[i], hbar.domain_hi()));
        hmax = std::max(hmax, std::abs(hv[i]));
    }

    // Flat holding cost: nothing is ever gained by rejecting, V == 0 solves the
    // variational part everywhere and the boundary gradient never binds before
    // the endpoint.
    if (hmax == 0.0) {
        sol.V.assign(N + 1, 0.0);
        sol.Vp.assign(N + 1, 0.0);
        sol.x_star = cfg.x_max;
        sol.residual = 0.0;
        sol.converged = true;
        sol.boundary_touching = true;
        sol.warnings.push_back(
            "holding cost identically zero: rejection branch never binds; "
            "upper gradient condition released and x_star reported at x_max");
        return sol;
    }

    const double aL = 0.5 * cfg.sigma2_bar / (dw * dw) - cfg.m_bar / (2.0 * dw);
    const double aU = 0.5 * cfg.sigma2_bar / (dw * dw) + cfg.m_bar / (2.0 * dw);
    const double aD = -(cfg.sigma2_bar / (dw * dw) + cfg.alpha);

    std::vector<Branch> branch(N + 1, Branch::Pde);
    std::vector<double> f(N + 1, 0.0);

    auto make_row = [&](std::size_t i, bool central_gradient) -> Row {
        switch (branch[i]) {
            case Branch::Pde:
                return {aL, aD, aU, -hv[i]};
            case Branch::Reflect:
                if (central_gradient) return {-1.0, 0.0, 1.0, 0.0};
                return {0.0, -1.0, 1.0, 0.0};  // forward difference, f' = 0
            case Branch::Reject:
                if (central_gradient) return {-1.0, 0.0, 1.0, 2.0 * dw * cfg.r_bar};
                return {-1.0, 1.0, 0.0, dw * cfg.r_bar};  // backward difference, f' = rbar
        }
        return {};
    };

    // Assemble and solve with the f'(0)=0 / f'(x_max)=rbar rows eliminated via
    // second-order one-sided stencils: f_0 = (4f_1 - f_2)/3 and
    // f_N = (4f_{N-1} - f_{N-2} + 2 dw rbar)/3.
    auto solve_system = [&](bool central_gradient, std::vector<double>& out) -> bool {
        const std::size_t n = N - 1;  // unknowns f_1..f_{N-1}
        TridiagPivoted sys;
        sys.dl.assign(n - 1, 0.0);
        sys.d.assign(n, 0.0);
        sys.du.assign(n - 1, 0.0);
        std::vector<double> rhs(n, 0.0);

        for (std::size_t i = 1; i <= N - 1; ++i) {
            Row row = make_row(i, central_gradient);
            if (i == 1) {
                row.cd += 4.0 / 3.0 * row.cl;
                row.cu += -1.0 / 3.0 * row.cl;
                row.cl = 0.0;
            }
            if (i == N - 1) {
                row.cl += -1.0 / 3.0 * row.cu;
                row.cd += 4.0 / 3.0 * row.cu;
                row.rhs -= row.cu * (2.0 * dw * cfg.r_bar) / 3.0;
                row.cu = 0.0;
            }
            const std::size_t k = i - 1;
            sys.d[k] = row.cd;
            if (k > 0) sys.dl[k - 1] = row.cl;
            if (k + 1 < n) sys.du[k] = row.cu;
            rhs[k] = row.rhs;
        }
        if (!sys.factor()) return false;
        sys.solve(rhs);

        out.resize(N + 1);
        for (std::size_t i = 1; i <= N - 1; ++i) out[i] = rhs[i - 1];
        out[0] = (4.0 * out[1] - out[2]) / 3.0;
        out[N] = (4.0 * out[N - 1] - out[N - 2] + 2.0 * dw * cfg.r_bar) / 3.0;
        for (double v : out)
            if (!std::isfinite(v)) return false;
        return true;
    };

    auto residual_and_branches = [&](const std::vector<double>& g,
                                     std::vector<Branch>& next) -> double {
        double res = 0.0;
        next = branch;
        for (std::size_t i = 1; i <= N - 1; ++i) {
            const double fpp = (g[i + 1] - 2.0 * g[i] + g[i - 1]) / (dw * dw);
            const double fp = (g[i + 1] - g[i - 1]) / (2.0 * dw);
            const double t1 = 0.5 * cfg.sigma2_bar * fpp + cfg.m_bar * fp - cfg.alpha * g[i] + hv[i];
            const double t2 = fp;
            const double t3 = cfg.r_bar - fp;
            const double m = std::min(t1, std::min(t2, t3));
            res = std::max(res, std::abs(m));

            Branch best = Branch::Pde;
            double bestv = t1;
            if (t2 < bestv) { bestv = t2; best = Branch::Reflect; }
            if (t3 < bestv) { bestv = t3; best = Branch::Reject; }
            const double active = branch[i] == Branch::Pde ? t1
                                : branch[i] == Branch::Reflect ? t2 : t3;
            // damped switch: only move on a strict improvement
            if (best != branch[i] && bestv < active - 1e-12 * (std::abs(active) + tol_abs))
                next[i] = best;
        }
        return res;
    };

    bool central = false;
    std::vector<double> g;
    std::vector<Branch> next;
    int it = 0;
    for (; it < cfg.max_iterations; ++it) {
        if (!solve_system(central, g)) {
            if (central) {
                // polished system went singular; keep the last stable solve
                sol.warnings.push_back("central polish solve singular; keeping one-sided solution");
                break;
            }
            sol.warnings.push_back("one-sided solve singular");
            break;
        }
        f = g;
        sol.residual = residual_and_branches(f, next);
        const bool stable = std::equal(next.begin(), next.end(), branch.begin());
        branch = next;
        if (stable) {
            if (!central) {
                central = true;  // switch rows to the measured (central) operator
                continue;
            }
            if (sol.residual <= tol_abs) {
                sol.converged = true;
                ++it;
                break;
            }
        }
    }
    sol.iterations = it;
    if (!sol.converged && sol.residual <= tol_abs) sol.converged = true;
    if (!sol.converged) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "no convergence in %d iterations, residual %.3e",
                      sol.iterations, sol.residual);
        sol.warnings.emplace_back(buf);
    }

    sol.V = f;
    sol.Vp.resize(N + 1);
    sol.Vp[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dw);
    sol.Vp[N] = (3.0 * f[N] - 4.0 * f[N - 1] + f[N - 2]) / (2.0 * dw);
    for (std::size_t i = 1; i <= N - 1; ++i) sol.Vp[i] = (f[i + 1] - f[i - 1]) / (2.0 * dw);

    // Free boundary: first grid point from which Vp stays within tol of rbar.
    const double grad_tol = tol_abs;
    std::size_t k = N;
    while (k > 0 && sol.Vp[k - 1] >= cfg.r_bar - grad_tol) --k;
    sol.x_star = sol.grid[k];
    if (k == 0 || k == N) {
        sol.boundary_touching = true;
        sol.warnings.push_back(k == 0 ? "free boundary at the lower end of the domain"
                                      : "free boundary touches x_max: rejection gradient "
                                        "binds only at the endpoint");
    }
    return sol;
}

HJBSolution solve_bellman(const DerivedParams& d, const PiecewiseLinear& hbar,
                          double r_bar, double alpha, std::size_t N, double tol_rel) {
    HJBConfig cfg;
    cfg.m_bar = d.m_bar;
    cfg.sigma2_bar = d.sigma2_bar;
    cfg.alpha = alpha;
    cfg.r_bar = r_bar;
    cfg.x_max = d.x_max;
    cfg.N = N;
    cfg.tol_rel = tol_rel;
    return solve_bellman(cfg, hbar);
}

namespace {

double interp(const std::vector<double>& grid, const std::vector<double>& y, double w) {
    const double lo = grid.front(), hi = grid.back();
    w = clamp_to_domain(w, lo, hi, "hjb interpolation");
    const double pos = (w - lo) / (grid[1] - grid[0]);
    std::size_t k = static_cast<std::size_t>(pos);
    if (k >= grid.size() - 1) k = grid.size() - 2;
    const double t = (w - grid[k]) / (grid[k + 1] - grid[k]);
    return y[k] + t * (y[k + 1] - y[k]);
}

}  // namespace

double value_at(const HJBSolution& sol, double w) { return interp(sol.grid, sol.V, w); }

double gradient_at(const HJBSolution& sol, double w) {
    return std::clamp(interp(sol.grid, sol.Vp, w), 0.0, sol.r_bar);
}

}  // namespace sbq

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sbq/model.hpp"
#include "sbq/piecewise.hpp"

namespace sbq {

// Solution of the free-boundary Bellman equation
//   [ (1/2) sigma2 f'' + m f' - alpha f + hbar ] ^ f' ^ [ rbar - f' ] = 0
// on (0, x_max) with f'(0) = 0, f'(x_max) = rbar.
struct HJBSolution {
    std::vector<double> grid;  // uniform, N+1 points on [0, x_max]
    std::vector<double> V;
    std::vector<double> Vp;    // central differences inside, one-sided at the ends
    double x_star = 0.0;       // free boundary, +- dw
    double dw = 0.0;
    double r_bar = 0.0;
    double residual = 0.0;     // max |min of the three terms| over interior nodes
    std::size_t N = 0;
    double tol = 0.0;          // absolute, already scaled by rbar*x_max
    int iterations = 0;
    bool converged = false;
    bool boundary_touching = false;  // x_star at either end of the domain
    std::vector<std::string> warnings;
};

struct HJBConfig {
    double m_bar = 0.0;
    double sigma2_bar = 0.0;
    double alpha = 0.0;
    double r_bar = 0.0;
    double x_max = 0.0;
    std::size_t N = 2048;
    double tol_rel = 1e-8;  // relative to r_bar * x_max
    int max_iterations = 200;
};

// Policy iteration over the active branch (PDE / reflect / reject) with a
// tridiagonal solve per iteration. Throws std::runtime_error carrying the last
// residual when the iteration cap is hit without convergence.
HJBSolution solve_bellman(const HJBConfig& cfg, const PiecewiseLinear& hbar);

// Convenience entry matching the derived-parameter path.
HJBSolution solve_bellman(const DerivedParams& d, const PiecewiseLinear& hbar,
                          double r_bar, double alpha, std::size_t N = 2048,
                          double tol_rel = 1e-8);

double value_at(const HJBSolution& sol, double w);
// Interpolated derivative, clamped to [0, r_bar].
double gradient_at(const HJBSolution& sol, double w);

// Index of the accumulation interval [w_hat_{j-1}, w_hat_j) containing w.
std::size_t accumulation_interval(const std::vector<double>& w_hat, double w);

}  // namespace sbq

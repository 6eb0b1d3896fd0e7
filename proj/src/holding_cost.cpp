#include "sbq/holding_cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sbq {

namespace {
constexpr std::size_t kOrigin = static_cast<std::size_t>(-1);
}

RejectionRule rejection_rule(const SystemSpec& spec, const DerivedParams&) {
    RejectionRule rule;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spec.classes.size(); ++i) {
        const double rm = spec.classes[i].r * spec.classes[i].mu;
        if (rm < best) {  // ties keep the lowest class index
            best = rm;
            rule.i_star = i;
        }
    }
    rule.r_bar = best;
    return rule;
}

AccumulationOrder accumulation_order(const SystemSpec& spec, const DerivedParams& d) {
    const std::size_t I = spec.classes.size();
    AccumulationOrder order;
    order.w_hat.push_back(0.0);

    double h_prev = 0.0, theta_prev = 0.0;  // virtual origin
    std::size_t prev = kOrigin;
    std::vector<bool> taken(I, false);

    while (true) {
        AccumulationStep step;
        step.from = prev;
        std::size_t best = kOrigin;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < I; ++i) {
            if (taken[i]) continue;
            const double hi = spec.classes[i].h;
            const double ti = d.theta[i];
            if (!(hi > h_prev) || !(ti > theta_prev)) continue;
            const double ratio = (hi - h_prev) / (ti - theta_prev);
            step.candidates.emplace_back(i, ratio);
            if (ratio < best_ratio) {  // strict <: ties keep the lowest index
                best_ratio = ratio;
                best = i;
            }
        }
        if (best == kOrigin) break;
        step.chosen = best;
        step.ratio = best_ratio;
        order.steps.push_back(std::move(step));
        order.p.push_back(best);
        order.w_hat.push_back(spec.b * d.theta[best]);
        taken[best] = true;
        h_prev = spec.classes[best].h;
        theta_prev = d.theta[best];
        prev = best;
        if (best == d.argmax_theta) break;
    }

    if (order.p.empty() || order.p.back() != d.argmax_theta)
        throw std::logic_error("accumulation recursion did not reach argmax theta");

    order.E = order.p;
    std::sort(order.E.begin(), order.E.end());
    for (std::size_t i = 0; i < I; ++i)
        if (!taken[i]) order.D.push_back(i);
    return order;
}

PiecewiseLinear h_bar(const SystemSpec& spec, const DerivedParams&,
                      const AccumulationOrder& order) {
    std::vector<double> bp = order.w_hat;
    std::vector<double> val(bp.size());
    val[0] = 0.0;
    for (std::size_t j = 0; j < order.p.size(); ++j)
        val[j + 1] = spec.b * spec.classes[order.p[j]].h;
    return PiecewiseLinear(std::move(bp), std::move(val));
}

PiecewiseCurve gamma_curve(const SystemSpec& spec, const DerivedParams&,
                           const AccumulationOrder& order) {
    const std::size_t I = spec.classes.size();
    std::vector<std::vector<double>> verts(order.w_hat.size(), std::vector<double>(I, 0.0));
    for (std::size_t j = 0; j < order.p.size(); ++j)
        verts[j + 1][order.p[j]] = spec.b;
    return PiecewiseCurve(order.w_hat, std::move(verts));
}

std::vector<double> gamma(const SystemSpec& spec, const DerivedParams& d,
                          const AccumulationOrder& order, double w) {
    w = clamp_to_domain(w, 0.0, d.x_max, "gamma");
    const std::size_t I = spec.classes.size();
    std::vector<double> x(I, 0.0);
    if (w <= order.w_hat[1]) {
        x[order.p[0]] = w / d.theta[order.p[0]];
        return x;
    }
    std::size_t j = 1;
    while (j + 1 < order.w_hat.size() && w > order.w_hat[j + 1]) ++j;
    // w in (w_hat[j], w_hat[j+1]]: full buffer shared by p(j-1), p(j) (0-based j).
    const std::size_t lo = order.p[j - 1], hi = order.p[j];
    const double xh = (w - spec.b * d.theta[lo]) / (d.theta[hi] - d.theta[lo]);
    x[hi] = xh;
    x[lo] = spec.b - xh;
    return x;
}

LpVertex lp_oracle(const SystemSpec& spec, const DerivedParams& d, double w) {
    w = clamp_to_domain(w, 0.0, d.x_max, "lp_oracle");
    const std::size_t I = spec.classes.size();
    const double feas_tol = 1e-12 * (1.0 + spec.b);

    LpVertex best;
    best.value = std::numeric_limits<double>::infinity();
    auto consider = [&](const std::vector<double>& x) {
        double cost = 0.0;
        for (std::size_t i = 0; i < I; ++i) cost += spec.classes[i].h * x[i];
        if (cost < best.value) {
            best.value = cost;
            best.x = x;
        }
    };

    // Single-class candidates: theta_i x_i = w.
    for (std::size_t i = 0; i < I; ++i) {
        const double xi = w / d.theta[i];
        if (xi <= spec.b + feas_tol) {
            std::vector<double> x(I, 0.0);
            x[i] = std::min(xi, spec.b);
            consider(x);
        }
    }
    // Ordered pairs on the full-buffer face: x_i + x_k = b, theta.x = w.
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t k = 0; k < I; ++k) {
            if (i == k) continue;
            const double denom = d.theta[k] - d.theta[i];
            if (denom == 0.0) continue;
            const double xk = (w - spec.b * d.theta[i]) / denom;
            const double xi = spec.b - xk;
            if (xk < -feas_tol || xi < -feas_tol) continue;
            std::vector<double> x(I, 0.0);
            x[k] = std::max(xk, 0.0);
            x[i] = std::max(xi, 0.0);
            consider(x);
        }
    }

    if (!std::isfinite(best.value))
        throw std::runtime_error("lp_oracle: no feasible vertex (w outside [0, x_max]?)");
    return best;
}

}  // namespace sbq

#include "sbq/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbq {

double default_epsilon(double b) { return b / 25.0; }

PolicyConfig::PolicyConfig(const SystemSpec& spec, const DerivedParams& d,
                           const AccumulationOrder& order, const RejectionRule& rejection,
                           double x_star, double epsilon)
    : spec_(&spec),
      derived_(d),
      order_(order),
      rejection_(rejection),
      epsilon_(epsilon),
      x_star_(x_star) {
    if (!(epsilon > 0.0) || !(epsilon < spec.b))
        throw std::invalid_argument("PolicyConfig: epsilon must lie in (0, b)");
    if (!(x_star > 0.0)) throw std::invalid_argument("PolicyConfig: x_star must be positive");
    a_ = spec.b - epsilon;
    theta_J_ = d.theta[order_.p.back()];
    a_star_ = std::min(x_star, theta_J_ * a_);

    theta_p_.resize(order_.J() + 1);
    theta_p_[0] = 0.0;  // virtual origin
    for (std::size_t j = 0; j < order_.J(); ++j) theta_p_[j + 1] = d.theta[order_.p[j]];
}

Representation PolicyConfig::represent(double w) const {
    const double hi = theta_J_ * a_;
    if (!(w >= 0.0 && w < hi))
        throw std::out_of_range("represent: w outside [0, theta_J * a)");

    Representation rep;
    if (w < theta_p_[1] * a_) {
        rep.j = 1;
        rep.chi_l = 0.0;
        rep.chi_h = w / theta_p_[1];
        return rep;
    }
    std::size_t j = 2;
    while (j < theta_p_.size() && !(w < theta_p_[j] * a_)) ++j;
    // w in [theta_{p(j-1)} a, theta_{p(j)} a)
    rep.j = j;
    rep.chi_h = (w - a_ * theta_p_[j - 1]) / (theta_p_[j] - theta_p_[j - 1]);
    rep.chi_l = a_ - rep.chi_h;
    return rep;
}

Margins PolicyConfig::margins(double w) const {
    w = clamp_to_domain(w, 0.0, a_star_, "margins");

    // Unmargined curve values at w, on the b-scaled intervals.
    const double b = spec_->b;
    double xi_l, xi_h;
    if (w <= theta_p_[1] * b) {
        xi_l = 0.0;
        xi_h = w / theta_p_[1];
    } else {
        std::size_t j = 2;
        while (j < theta_p_.size() && w > theta_p_[j] * b) ++j;
        xi_h = (w - b * theta_p_[j - 1]) / (theta_p_[j] - theta_p_[j - 1]);
        xi_l = b - xi_h;
    }

    Margins m;
    if (xi_l < xi_h) {
        m.eps_l = std::min(epsilon_ / 2.0, xi_l);
    } else if (xi_h > epsilon_ / 2.0) {
        m.eps_l = epsilon_ / 2.0;
    } else {
        m.eps_l = epsilon_ - xi_h;
    }
    m.eps_h = epsilon_ - m.eps_l;
    return m;
}

std::vector<double> PolicyConfig::gamma_a(double w) const {
    const std::size_t I = spec_->classes.size();
    std::vector<double> x(I, 0.0);
    w = clamp_to_domain(w, 0.0, curve_hi(), "gamma_a");

    const double band_lo = theta_J_ * a_;
    if (w >= band_lo) {
        // interpolation band: last coordinate runs from a up to b
        x[order_.p.back()] = w / theta_J_;
        return x;
    }
    const Representation rep = represent(w);
    if (rep.j >= 2) x[order_.p[rep.j - 2]] = rep.chi_l;
    x[order_.p[rep.j - 1]] = rep.chi_h;
    return x;
}

PrioritySets PolicyConfig::priority_sets(const std::vector<double>& x, double w) const {
    const std::size_t I = spec_->classes.size();
    if (x.size() != I) throw std::invalid_argument("priority_sets: state dimension mismatch");

    // Threshold pair at the observed workload; beyond the margin region only
    // the last accumulated class keeps a (ray) target.
    std::size_t j;
    double chi_l, chi_h;
    if (w >= theta_J_ * a_) {
        j = order_.J();
        chi_l = 0.0;
        chi_h = std::min(w / theta_J_, spec_->b);
    } else {
        const Representation rep = represent(std::max(w, 0.0));
        j = rep.j;
        chi_l = rep.chi_l;
        chi_h = rep.chi_h;
    }

    PrioritySets sets;
    std::vector<bool> low(I, false);
    const std::size_t hi_class = order_.p[j - 1];
    if (x[hi_class] < chi_h) low[hi_class] = true;
    if (j >= 2) {
        const std::size_t lo_class = order_.p[j - 2];
        if (x[lo_class] < chi_l) low[lo_class] = true;
    }
    for (std::size_t i = 0; i < I; ++i) {
        if (low[i]) {
            sets.L.push_back(i);
            if (x[i] > 0.0) sets.Lp.push_back(i);
        } else {
            sets.H.push_back(i);
            if (x[i] > 0.0) sets.Hp.push_back(i);
        }
    }
    return sets;
}

ServiceDecision PolicyConfig::allocate(const std::vector<double>& x, double w) const {
    const std::size_t I = spec_->classes.size();
    ServiceDecision dec;
    dec.B.assign(I, 0.0);

    const PrioritySets sets = priority_sets(x, w);
    const auto& serve = sets.Hp.empty() ? sets.Lp : sets.Hp;
    if (serve.empty()) return dec;  // empty system

    double rho_sum = 0.0;
    for (std::size_t i : serve) rho_sum += derived_.rho[i];
    for (std::size_t i : serve) dec.B[i] = derived_.rho[i] / rho_sum;
    return dec;
}

AdmitDecision PolicyConfig::admit(std::size_t i, const std::vector<double>& x, double w,
                                  double sqrt_n) const {
    if (i == rejection_.i_star && w >= a_star_) return AdmitDecision::RejectPolicy;
    double total = 0.0;
    for (double v : x) total += v;
    if (total + 1.0 / sqrt_n > spec_->b * (1.0 + 1e-12)) return AdmitDecision::RejectForced;
    return AdmitDecision::Accept;
}

}  // namespace sbq

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sbq {

// Relative slack tolerated when evaluating at the domain edges; values within
// this band are clamped, anything further out is rejected.
inline constexpr double kDomainSlackRel = 1e-9;

inline double clamp_to_domain(double w, double lo, double hi, const char* what) {
    const double slack = kDomainSlackRel * (1.0 + (hi > -lo ? hi : -lo));
    if (w < lo - slack || w > hi + slack)
        throw std::out_of_range(std::string(what) + ": argument outside domain");
    if (w < lo) return lo;
    if (w > hi) return hi;
    return w;
}

// Scalar piecewise-linear function on [breakpoints.front(), breakpoints.back()],
// stored as breakpoint/value tables and evaluated by binary search + lerp.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values)
        : bp_(std::move(breakpoints)), val_(std::move(values)) {
        if (bp_.size() != val_.size() || bp_.size() < 2)
            throw std::invalid_argument("PiecewiseLinear: need matching tables with >= 2 points");
        for (std::size_t k = 1; k < bp_.size(); ++k)
            if (!(bp_[k] > bp_[k - 1]))
                throw std::invalid_argument("PiecewiseLinear: breakpoints must increase");
    }

    double operator()(double w) const {
        w = clamp_to_domain(w, bp_.front(), bp_.back(), "PiecewiseLinear");
        const std::size_t s = segment_index(w);
        const double t = (w - bp_[s]) / (bp_[s + 1] - bp_[s]);
        return val_[s] + t * (val_[s + 1] - val_[s]);
    }

    double slope(std::size_t segment) const {
        return (val_[segment + 1] - val_[segment]) / (bp_[segment + 1] - bp_[segment]);
    }

    std::size_t segment_index(double w) const {
        std::size_t lo = 0, hi = bp_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (bp_[mid] <= w ? lo : hi) = mid;
        }
        return lo;
    }

    std::size_t segments() const { return bp_.size() - 1; }
    const std::vector<double>& breakpoints() const { return bp_; }
    const std::vector<double>& values() const { return val_; }
    double domain_lo() const { return bp_.front(); }
    double domain_hi() const { return bp_.back(); }

private:
    std::vector<double> bp_;
    std::vector<double> val_;
};

// Vector-valued analog used for the minimizing curve: vertices at breakpoints,
// straight-line interpolation in between.
class PiecewiseCurve {
public:
    PiecewiseCurve() = default;
    PiecewiseCurve(std::vector<double> breakpoints, std::vector<std::vector<double>> vertices)
        : bp_(std::move(breakpoints)), vert_(std::move(vertices)) {
        if (bp_.size() != vert_.size() || bp_.size() < 2)
            throw std::invalid_argument("PiecewiseCurve: need matching tables with >= 2 points");
        for (std::size_t k = 1; k < bp_.size(); ++k) {
            if (!(bp_[k] > bp_[k - 1]))
                throw std::invalid_argument("PiecewiseCurve: breakpoints must increase");
            if (vert_[k].size() != vert_[0].size())
                throw std::invalid_argument("PiecewiseCurve: vertex dimensions differ");
        }
    }

    std::vector<double> operator()(double w) const {
        w = clamp_to_domain(w, bp_.front(), bp_.back(), "PiecewiseCurve");
        std::size_t lo = 0, hi = bp_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (bp_[mid] <= w ? lo : hi) = mid;
        }
        const double t = (w - bp_[lo]) / (bp_[lo + 1] - bp_[lo]);
        std::vector<double> out(vert_[lo].size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = vert_[lo][i] + t * (vert_[lo + 1][i] - vert_[lo][i]);
        return out;
    }

    const std::vector<double>& breakpoints() const { return bp_; }
    const std::vector<std::vector<double>>& vertices() const { return vert_; }

private:
    std::vector<double> bp_;
    std::vector<std::vector<double>> vert_;
};

}  // namespace sbq

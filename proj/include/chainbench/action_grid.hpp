#pragma once

#include <cmath>
#include <stdexcept>

namespace chainbench {

// Uniform finite discretization of the action interval [0,1].
//
// Action i (0-based, i = 0..count-1) has value offset + i * step. The two
// hierarchical learners and Exp3-RTB each use a specific layout, provided
// by the factory functions below.
class ActionGrid {
public:
    ActionGrid(int count, double offset, double step)
        : count_(count), offset_(offset), step_(step) {
        if (count < 1) throw std::invalid_argument("ActionGrid: count must be >= 1");
        if (!(step > 0.0)) throw std::invalid_argument("ActionGrid: step must be > 0");
        if (offset < 0.0 || value(count - 1) > 1.0 + 1e-12)
            throw std::invalid_argument("ActionGrid: values must lie in [0,1]");
    }

    int count() const { return count_; }
    double offset() const { return offset_; }
    double step() const { return step_; }

    double value(int index) const {
        if (index < 0 || index >= count_) throw std::out_of_range("ActionGrid: index out of range");
        return offset_ + static_cast<double>(index) * step_;
    }

    // Index of the grid value closest to y; exact midpoints go to the
    // lower index.
    int nearest_index(double y) const {
        const double q = (y - offset_) / step_;
        double k = std::floor(q + 0.5);
        if (k - q == 0.5) k -= 1.0; // midpoint tie -> lower index
        if (k < 0.0) return 0;
        if (k >= static_cast<double>(count_)) return count_ - 1;
        return static_cast<int>(k);
    }

private:
    int count_;
    double offset_;
    double step_;
};

// Grid used by the tree learner on hierarchical coverings: values
// (k-1) * 2^-M for k = 1..2^M, i.e. starting at 0.
inline ActionGrid make_hier_grid(int depth) {
    if (depth < 0) throw std::invalid_argument("make_hier_grid: depth must be >= 0");
    const int k = 1 << depth;
    const double step = 1.0 / static_cast<double>(k);
    return ActionGrid(k, 0.0, step);
}

// Grid used by the dyadic-tree learner: values k * 2^-M for k = 1..2^M.
inline ActionGrid make_star_grid(int depth) {
    if (depth < 1) throw std::invalid_argument("make_star_grid: depth must be >= 1");
    const int k = 1 << depth;
    const double step = 1.0 / static_cast<double>(k);
    return ActionGrid(k, step, step);
}

// Grid used by Exp3-RTB: values (k-1) * gamma for k = 1..ceil(1/gamma).
inline ActionGrid make_rtb_grid(double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("make_rtb_grid: gamma in (0,1]");
    const int k = static_cast<int>(std::ceil(1.0 / gamma - 1e-12));
    return ActionGrid(k, 0.0, gamma);
}

// Uniform eps-cover of [0,1] with ceil(1/eps) points: 0, 1/K, ..., (K-1)/K.
// Every y in [0,1] is within 1/K <= eps of a grid point.
inline ActionGrid make_cover_grid(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("make_cover_grid: eps in (0,1]");
    const int k = static_cast<int>(std::ceil(1.0 / eps - 1e-12));
    return ActionGrid(k, 0.0, 1.0 / static_cast<double>(k));
}

// Uniform cover including both endpoints, used by the full-information
// learner: ceil(1/eps)+1 points with spacing <= eps.
inline ActionGrid make_endpoint_cover_grid(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("make_endpoint_cover_grid: eps in (0,1]");
    const int k = static_cast<int>(std::ceil(1.0 / eps - 1e-12)) + 1;
    return ActionGrid(k, 0.0, 1.0 / static_cast<double>(k - 1));
}

} // namespace chainbench

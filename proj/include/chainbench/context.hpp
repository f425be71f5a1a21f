#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace chainbench {

// A point of the context space [0,1]^d under the sup-norm metric.
class Context {
public:
    Context() = default;
    explicit Context(std::vector<double> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) throw std::invalid_argument("Context: dimension must be >= 1");
        for (double c : coords_) {
            if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("Context: coordinate outside [0,1]");
        }
    }

    std::size_t dimension() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<double>& coords() const { return coords_; }

    double distance_to(const Context& other) const {
        if (other.dimension() != dimension())
            throw std::invalid_argument("Context: dimension mismatch");
        double d = 0.0;
        for (std::size_t i = 0; i < coords_.size(); ++i)
            d = std::max(d, std::abs(coords_[i] - other.coords_[i]));
        return d;
    }

private:
    std::vector<double> coords_;
};

inline double sup_distance(const Context& a, const Context& b) { return a.distance_to(b); }

} // namespace chainbench

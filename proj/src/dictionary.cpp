#include "chainbench/dictionary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace chainbench {

namespace {

// Enumerates the centers of resolution^d equal cells of [0,1]^d.
std::vector<Context> make_center_grid(int dimension, int resolution) {
    std::vector<Context> grid;
    const long total = static_cast<long>(std::pow(resolution, dimension));
    grid.reserve(static_cast<std::size_t>(total));
    std::vector<double> coords(static_cast<std::size_t>(dimension), 0.0);
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        for (int j = 0; j < dimension; ++j) {
            const long cell = rest % resolution;
            rest /= resolution;
            coords[static_cast<std::size_t>(j)] =
                (static_cast<double>(cell) + 0.5) / static_cast<double>(resolution);
        }
        grid.emplace_back(coords);
    }
    return grid;
}

} // namespace

FunctionDictionary::FunctionDictionary(std::vector<Policy> members, int dimension, int resolution)
    : members_(std::move(members)), dimension_(dimension), resolution_(resolution) {
    if (members_.empty()) throw std::invalid_argument("FunctionDictionary: no members");
    if (dimension < 1) throw std::invalid_argument("FunctionDictionary: dimension must be >= 1");
    if (resolution < 1) throw std::invalid_argument("FunctionDictionary: resolution must be >= 1");

    grid_ = make_center_grid(dimension, resolution);
    values_.resize(members_.size());
    for (std::size_t m = 0; m < members_.size(); ++m) {
        values_[m].reserve(grid_.size());
        for (const Context& x : grid_) values_[m].push_back(members_[m](x));
    }
}

double FunctionDictionary::sup_distance(std::size_t a, std::size_t b) const {
    const std::vector<double>& va = values_[a];
    const std::vector<double>& vb = values_[b];
    double d = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) d = std::max(d, std::abs(va[i] - vb[i]));
    return d;
}

double FunctionDictionary::max_lipschitz_violation() const {
    double worst = 0.0;
    for (const std::vector<double>& v : values_) {
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            for (std::size_t j = i + 1; j < grid_.size(); ++j) {
                const double excess = std::abs(v[i] - v[j]) - grid_[i].distance_to(grid_[j]);
                worst = std::max(worst, excess);
            }
        }
    }
    return worst;
}

FunctionDictionary make_canonical_dictionary_d1() {
    constexpr int kBins = 4;        // dyadic quarters
    constexpr int kValueLevels = 9; // values k/8, k = 0..8
    constexpr int kMaxStep = 2;     // |delta| <= 2/8 = bin width

    struct PiecewiseConstant {
        std::array<int, kBins> levels;
        double operator()(const Context& x) const {
            int bin = static_cast<int>(x[0] * kBins);
            if (bin >= kBins) bin = kBins - 1;
            return static_cast<double>(levels[static_cast<std::size_t>(bin)]) / 8.0;
        }
    };

    std::vector<FunctionDictionary::Policy> members;
    std::array<int, kBins> levels{};
    // Depth-first enumeration of all level paths with bounded steps.
    auto extend = [&](auto&& self, int bin) -> void {
        if (bin == kBins) {
            members.emplace_back(PiecewiseConstant{levels});
            return;
        }
        const int lo = std::max(0, levels[static_cast<std::size_t>(bin - 1)] - kMaxStep);
        const int hi = std::min(kValueLevels - 1, levels[static_cast<std::size_t>(bin - 1)] + kMaxStep);
        for (int v = lo; v <= hi; ++v) {
            levels[static_cast<std::size_t>(bin)] = v;
            self(self, bin + 1);
        }
    };
    for (int first = 0; first < kValueLevels; ++first) {
        levels[0] = first;
        extend(extend, 1);
    }

    return FunctionDictionary(std::move(members), 1, kBins);
}

} // namespace chainbench

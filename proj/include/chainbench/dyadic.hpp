#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "chainbench/context.hpp"

namespace chainbench {

// Dyadic partition of [0,1]^d: depth m splits the cube into 2^{md} equal
// cells. A point's cell path is the sequence of child choices
// sigma_1..sigma_m, each in [0, 2^d). Cells are half-open on the left
// ([a, a + w) per coordinate), with the top cell closed at 1, so a point
// on a cell edge belongs to the cell whose lower edge it is.
class DyadicPath {
public:
    DyadicPath(const Context& x, int depth);

    int depth() const { return static_cast<int>(steps_.size()); }
    int dimension() const { return dimension_; }

    // Child choice at refinement step m (1-based), in [0, 2^d).
    int step(int m) const { return steps_[static_cast<std::size_t>(m - 1)]; }

    // Flattened cell index at depth m (base-2^d digits sigma_1..sigma_m).
    std::uint64_t cell_index(int m) const;

    // Center of the depth-m cell containing the point.
    Context cell_center(int m) const;

private:
    int dimension_;
    std::vector<int> steps_;
    std::vector<std::vector<std::uint32_t>> cells_; // [m-1][coordinate]
};

// Piecewise-constant approximation coefficients with values in {-1,0,1}:
//
//   f_M(x) = 1/2 + sum_{m=1..M} 2^-m c_m(sigma_{1:m}(x))
//
// Coefficients are stored densely per level, indexed by flattened cell.
class WaveletCoefficients {
public:
    WaveletCoefficients(int dimension, int depth);

    int dimension() const { return dimension_; }
    int depth() const { return depth_; }

    int coefficient(int level, std::uint64_t cell) const {
        return levels_[static_cast<std::size_t>(level - 1)][cell];
    }
    void set_coefficient(int level, std::uint64_t cell, int value);

    double evaluate(const Context& x) const;

private:
    int dimension_;
    int depth_;
    std::vector<std::vector<signed char>> levels_;
};

// Constructive fit of a function onto the coefficient family: level 1
// projects f at each cell center onto {0, 1/2, 1}; deeper levels pick the
// correction in {-1,0,1} * 2^-m closest to f at the finer center. Exact
// ties prefer 0, then -1. For 1-Lipschitz f, the fit satisfies
// ||f_M - f||_inf <= 2^-M.
WaveletCoefficients wavelet_fit(const std::function<double(const Context&)>& f, int dimension, int depth);

// Max |f_M - f| over roughly `points` grid points of [0,1]^d.
double wavelet_sup_error(const WaveletCoefficients& coeffs,
                         const std::function<double(const Context&)>& f,
                         long points);

} // namespace chainbench

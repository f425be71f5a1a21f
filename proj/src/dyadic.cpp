#include "chainbench/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chainbench {

DyadicPath::DyadicPath(const Context& x, int depth) : dimension_(static_cast<int>(x.dimension())) {
    if (depth < 0) throw std::invalid_argument("DyadicPath: depth must be >= 0");
    if (dimension_ > 20) throw std::invalid_argument("DyadicPath: dimension too large");

    steps_.reserve(static_cast<std::size_t>(depth));
    cells_.reserve(static_cast<std::size_t>(depth));
    std::vector<std::uint32_t> previous(static_cast<std::size_t>(dimension_), 0);
    for (int m = 1; m <= depth; ++m) {
        std::vector<std::uint32_t> current(static_cast<std::size_t>(dimension_));
        int sigma = 0;
        const double scale = std::pow(2.0, m);
        for (int j = 0; j < dimension_; ++j) {
            auto cell = static_cast<std::uint32_t>(x[static_cast<std::size_t>(j)] * scale);
            const std::uint32_t top = (1u << m) - 1;
            if (cell > top) cell = top; // x == 1 belongs to the last cell
            current[static_cast<std::size_t>(j)] = cell;
            const int bit = static_cast<int>(cell - 2 * previous[static_cast<std::size_t>(j)]);
            sigma |= bit << j;
        }
        steps_.push_back(sigma);
        cells_.push_back(current);
        previous = std::move(current);
    }
}

std::uint64_t DyadicPath::cell_index(int m) const {
    std::uint64_t index = 0;
    for (int k = 1; k <= m; ++k)
        index = (index << dimension_) | static_cast<std::uint64_t>(step(k));
    return index;
}

Context DyadicPath::cell_center(int m) const {
    std::vector<double> coords(static_cast<std::size_t>(dimension_));
    const double width = std::pow(2.0, -m);
    const auto& cells = cells_[static_cast<std::size_t>(m - 1)];
    for (int j = 0; j < dimension_; ++j)
        coords[static_cast<std::size_t>(j)] = (static_cast<double>(cells[static_cast<std::size_t>(j)]) + 0.5) * width;
    return Context(coords);
}

WaveletCoefficients::WaveletCoefficients(int dimension, int depth)
    : dimension_(dimension), depth_(depth) {
    if (dimension < 1) throw std::invalid_argument("WaveletCoefficients: dimension must be >= 1");
    if (depth < 1) throw std::invalid_argument("WaveletCoefficients: depth must be >= 1");
    if (static_cast<long>(dimension) * depth > 40)
        throw std::invalid_argument("WaveletCoefficients: partition too fine");
    levels_.resize(static_cast<std::size_t>(depth));
    for (int m = 1; m <= depth; ++m)
        levels_[static_cast<std::size_t>(m - 1)]
            .assign(static_cast<std::size_t>(1) << (static_cast<std::size_t>(m) * dimension), 0);
}

void WaveletCoefficients::set_coefficient(int level, std::uint64_t cell, int value) {
    if (value < -1 || value > 1) throw std::invalid_argument("WaveletCoefficients: value in {-1,0,1}");
    levels_[static_cast<std::size_t>(level - 1)][cell] = static_cast<signed char>(value);
}

double WaveletCoefficients::evaluate(const Context& x) const {
    if (static_cast<int>(x.dimension()) != dimension_)
        throw std::invalid_argument("WaveletCoefficients: dimension mismatch");
    const DyadicPath path(x, depth_);
    double value = 0.5;
    for (int m = 1; m <= depth_; ++m)
        value += std::pow(2.0, -m) * coefficient(m, path.cell_index(m));
    return value;
}

namespace {

// Picks the correction in {-1,0,1} minimizing |base + c * scale - target|;
// exact ties prefer 0, then -1.
int project_correction(double base, double scale, double target) {
    int best = 0;
    double best_error = std::abs(base - target);
    for (int c : {-1, 1}) { // only strict improvement, so ties keep 0, then -1
        const double error = std::abs(base + c * scale - target);
        if (error < best_error) {
            best = c;
            best_error = error;
        }
    }
    return best;
}

} // namespace

WaveletCoefficients wavelet_fit(const std::function<double(const Context&)>& f, int dimension, int depth) {
    WaveletCoefficients coeffs(dimension, depth);
    const int branching = 1 << dimension;

    // Depth-first over cells, carrying the accumulated value of the fit at
    // the parent level; the center of each cell is rebuilt from per-axis
    // cell indices.
    struct Frame {
        int level;
        std::uint64_t cell;
        std::vector<std::uint32_t> axis_cells;
        double partial; // 1/2 + sum of chosen corrections above this cell
    };

    std::vector<Frame> stack;
    stack.push_back({0, 0, std::vector<std::uint32_t>(static_cast<std::size_t>(dimension), 0), 0.5});
    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();
        if (frame.level == depth) continue;

        const int child_level = frame.level + 1;
        const double scale = std::pow(2.0, -child_level);
        for (int sigma = 0; sigma < branching; ++sigma) {
            Frame child;
            child.level = child_level;
            child.cell = (frame.cell << dimension) | static_cast<std::uint64_t>(sigma);
            child.axis_cells.resize(static_cast<std::size_t>(dimension));
            std::vector<double> center(static_cast<std::size_t>(dimension));
            for (int j = 0; j < dimension; ++j) {
                child.axis_cells[static_cast<std::size_t>(j)] =
                    (frame.axis_cells[static_cast<std::size_t>(j)] << 1) |
                    static_cast<std::uint32_t>((sigma >> j) & 1);
                center[static_cast<std::size_t>(j)] =
                    (static_cast<double>(child.axis_cells[static_cast<std::size_t>(j)]) + 0.5) * scale;
            }
            const double target = f(Context(center));
            const int c = project_correction(frame.partial, scale, target);
            coeffs.set_coefficient(child_level, child.cell, c);
            child.partial = frame.partial + c * scale;
            stack.push_back(std::move(child));
        }
    }
    return coeffs;
}

double wavelet_sup_error(const WaveletCoefficients& coeffs,
                         const std::function<double(const Context&)>& f,
                         long points) {
    const int d = coeffs.dimension();
    const long per_axis = std::max(2L, static_cast<long>(std::round(std::pow(static_cast<double>(points), 1.0 / d))));
    std::vector<long> counter(static_cast<std::size_t>(d), 0);
    double worst = 0.0;
    while (true) {
        std::vector<double> coords(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j)
            coords[static_cast<std::size_t>(j)] =
                static_cast<double>(counter[static_cast<std::size_t>(j)]) / static_cast<double>(per_axis - 1);
        const Context x(coords);
        worst = std::max(worst, std::abs(coeffs.evaluate(x) - f(x)));

        int axis = 0;
        while (axis < d && ++counter[static_cast<std::size_t>(axis)] == per_axis) {
            counter[static_cast<std::size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == d) break;
    }
    return worst;
}

} // namespace chainbench

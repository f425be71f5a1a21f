#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chainbench/context.hpp"

namespace chainbench {

// Finite set of policies f : [0,1]^d -> [0,1] together with the context
// grid on which sup-norm distances between members are estimated. Values
// at the grid points are cached at construction, so distance queries are
// pure table lookups.
class FunctionDictionary {
public:
    using Policy = std::function<double(const Context&)>;

    // `resolution` is the number of grid points per dimension; the grid
    // points are the centers of the equal subdivision (offset half a cell),
    // which is exact for policies constant on those cells.
    FunctionDictionary(std::vector<Policy> members, int dimension, int resolution);

    std::size_t size() const { return members_.size(); }
    int dimension() const { return dimension_; }
    int resolution() const { return resolution_; }
    std::size_t grid_size() const { return grid_.size(); }

    double evaluate(std::size_t member, const Context& x) const { return members_[member](x); }
    double sup_distance(std::size_t a, std::size_t b) const;

    // Largest violation of |f(g) - f(g')| <= ||g - g'||_inf over all grid
    // point pairs, maximized over members. Zero for dictionaries that are
    // exactly 1-Lipschitz on their grid.
    double max_lipschitz_violation() const;

private:
    std::vector<Policy> members_;
    int dimension_;
    int resolution_;
    std::vector<Context> grid_;
    std::vector<std::vector<double>> values_; // [member][grid point]
};

// The dictionary the harness ships for d = 1: policies constant on the
// four dyadic quarters of [0,1], with values on the grid {k/8} and steps
// of at most 1/4 between adjacent quarters. Exactly 1-Lipschitz on the
// quarter-center grid, and the tree built over it is reproducible.
FunctionDictionary make_canonical_dictionary_d1();

} // namespace chainbench

#include "chainbench/comparators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chainbench/errors.hpp"

namespace chainbench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> action_grid_values(int resolution) {
    std::vector<double> values(static_cast<std::size_t>(resolution) + 1);
    for (int k = 0; k <= resolution; ++k)
        values[static_cast<std::size_t>(k)] = static_cast<double>(k) / static_cast<double>(resolution);
    return values;
}

} // namespace

ComparatorResult best_grid_constant(const std::vector<EnvironmentRound>& rounds, int resolution) {
    if (rounds.empty()) throw std::invalid_argument("best_grid_constant: empty trace");
    if (resolution < 1) throw std::invalid_argument("best_grid_constant: resolution must be >= 1");

    const std::vector<double> actions = action_grid_values(resolution);
    double best_total = kInf;
    double best_action = actions[0];
    for (double a : actions) {
        double total = 0.0;
        for (const EnvironmentRound& r : rounds) total += r.loss(a);
        if (total < best_total) {
            best_total = total;
            best_action = a;
        }
    }

    ComparatorResult result;
    result.total = best_total;
    result.per_round.reserve(rounds.size());
    for (const EnvironmentRound& r : rounds) result.per_round.push_back(r.loss(best_action));
    result.slack = static_cast<double>(rounds.size()) / static_cast<double>(resolution);
    return result;
}

namespace {

ComparatorResult lipschitz_dp_d1(const std::vector<EnvironmentRound>& rounds, int resolution) {
    const int bins = resolution;
    const int actions = resolution + 1;
    const std::vector<double> grid = action_grid_values(resolution);

    // Cost of holding each action inside each bin.
    std::vector<std::vector<double>> bin_cost(static_cast<std::size_t>(bins),
                                              std::vector<double>(static_cast<std::size_t>(actions), 0.0));
    std::vector<int> round_bin(rounds.size());
    for (std::size_t t = 0; t < rounds.size(); ++t) {
        int b = static_cast<int>(rounds[t].context[0] * bins);
        if (b >= bins) b = bins - 1;
        round_bin[t] = b;
        for (int k = 0; k < actions; ++k)
            bin_cost[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)] +=
                rounds[t].loss(grid[static_cast<std::size_t>(k)]);
    }

    // Forward DP over bins; a step between adjacent bins may move the
    // action by at most one grid step (= the bin width).
    std::vector<std::vector<int>> back(static_cast<std::size_t>(bins),
                                       std::vector<int>(static_cast<std::size_t>(actions), -1));
    std::vector<double> cost(bin_cost[0]);
    for (int b = 1; b < bins; ++b) {
        std::vector<double> next(static_cast<std::size_t>(actions), kInf);
        for (int k = 0; k < actions; ++k) {
            for (int prev = std::max(0, k - 1); prev <= std::min(actions - 1, k + 1); ++prev) {
                const double c = cost[static_cast<std::size_t>(prev)];
                if (c < next[static_cast<std::size_t>(k)]) {
                    next[static_cast<std::size_t>(k)] = c;
                    back[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)] = prev;
                }
            }
            next[static_cast<std::size_t>(k)] += bin_cost[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)];
        }
        cost = std::move(next);
    }

    int best = 0;
    for (int k = 1; k < actions; ++k)
        if (cost[static_cast<std::size_t>(k)] < cost[static_cast<std::size_t>(best)]) best = k;

    std::vector<int> assignment(static_cast<std::size_t>(bins));
    int k = best;
    for (int b = bins - 1; b >= 0; --b) {
        assignment[static_cast<std::size_t>(b)] = k;
        if (b > 0) k = back[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)];
    }

    ComparatorResult result;
    result.total = cost[static_cast<std::size_t>(best)];
    result.per_round.reserve(rounds.size());
    for (std::size_t t = 0; t < rounds.size(); ++t) {
        const int a = assignment[static_cast<std::size_t>(round_bin[t])];
        result.per_round.push_back(rounds[t].loss(grid[static_cast<std::size_t>(a)]));
    }
    result.slack = static_cast<double>(rounds.size()) / static_cast<double>(resolution);
    return result;
}

ComparatorResult lipschitz_bruteforce(const std::vector<EnvironmentRound>& rounds, int resolution,
                                      int max_occupied_cells) {
    const int d = static_cast<int>(rounds[0].context.dimension());
    const int actions = resolution + 1;
    const std::vector<double> grid = action_grid_values(resolution);

    // Occupied cells of the resolution^d partition.
    struct Cell {
        std::vector<int> coords;
        Context center;
        std::vector<std::size_t> rounds;
    };
    std::vector<Cell> cells;
    std::vector<int> round_cell(rounds.size());
    for (std::size_t t = 0; t < rounds.size(); ++t) {
        std::vector<int> coords(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            int c = static_cast<int>(rounds[t].context[static_cast<std::size_t>(j)] * resolution);
            if (c >= resolution) c = resolution - 1;
            coords[static_cast<std::size_t>(j)] = c;
        }
        int found = -1;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].coords == coords) {
                found = static_cast<int>(i);
                break;
            }
        if (found < 0) {
            std::vector<double> center(static_cast<std::size_t>(d));
            for (int j = 0; j < d; ++j)
                center[static_cast<std::size_t>(j)] =
                    (coords[static_cast<std::size_t>(j)] + 0.5) / static_cast<double>(resolution);
            cells.push_back({std::move(coords), Context(center), {}});
            found = static_cast<int>(cells.size()) - 1;
        }
        cells[static_cast<std::size_t>(found)].rounds.push_back(t);
        round_cell[t] = found;
    }

    if (static_cast<int>(cells.size()) > max_occupied_cells)
        throw ComparatorTooLarge("lipschitz comparator: " + std::to_string(cells.size()) +
                                 " occupied cells exceed the budget of " +
                                 std::to_string(max_occupied_cells));
    double combos = 1.0;
    for (std::size_t i = 0; i < cells.size(); ++i) combos *= actions;
    if (combos > 4e7)
        throw ComparatorTooLarge("lipschitz comparator: assignment space too large");

    // Per-cell costs and pairwise distance caps.
    std::vector<std::vector<double>> cell_cost(cells.size(),
                                               std::vector<double>(static_cast<std::size_t>(actions), 0.0));
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t t : cells[i].rounds)
            for (int a = 0; a < actions; ++a)
                cell_cost[i][static_cast<std::size_t>(a)] += rounds[t].loss(grid[static_cast<std::size_t>(a)]);

    std::vector<std::vector<double>> cap(cells.size(), std::vector<double>(cells.size(), 0.0));
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = 0; j < cells.size(); ++j)
            cap[i][j] = cells[i].center.distance_to(cells[j].center) + 1e-12;

    std::vector<int> assignment(cells.size(), 0);
    std::vector<int> best_assignment(cells.size(), 0);
    double best_total = kInf;
    // Depth-first enumeration with pairwise pruning against earlier cells.
    auto search = [&](auto&& self, std::size_t i, double partial) -> void {
        if (partial >= best_total) return;
        if (i == cells.size()) {
            best_total = partial;
            best_assignment = assignment;
            return;
        }
        for (int a = 0; a < actions; ++a) {
            bool feasible = true;
            for (std::size_t j = 0; j < i; ++j) {
                if (std::abs(grid[static_cast<std::size_t>(a)] -
                             grid[static_cast<std::size_t>(assignment[j])]) > cap[i][j]) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            assignment[i] = a;
            self(self, i + 1, partial + cell_cost[i][static_cast<std::size_t>(a)]);
        }
    };
    search(search, 0, 0.0);

    ComparatorResult result;
    result.total = best_total;
    result.per_round.reserve(rounds.size());
    for (std::size_t t = 0; t < rounds.size(); ++t) {
        const int a = best_assignment[static_cast<std::size_t>(round_cell[t])];
        result.per_round.push_back(rounds[t].loss(grid[static_cast<std::size_t>(a)]));
    }
    result.slack = static_cast<double>(rounds.size()) / static_cast<double>(resolution);
    return result;
}

} // namespace

ComparatorResult lipschitz_comparator(const std::vector<EnvironmentRound>& rounds, int resolution,
                                      int max_occupied_cells) {
    if (rounds.empty()) throw std::invalid_argument("lipschitz_comparator: empty trace");
    if (resolution < 1) throw std::invalid_argument("lipschitz_comparator: resolution must be >= 1");

    if (rounds[0].context.dimension() == 1) return lipschitz_dp_d1(rounds, resolution);
    return lipschitz_bruteforce(rounds, resolution, max_occupied_cells);
}

ComparatorResult comparator_value(const std::vector<EnvironmentRound>& rounds, ComparatorClass cls,
                                  int resolution) {
    switch (cls) {
        case ComparatorClass::BestGridConstant: return best_grid_constant(rounds, resolution);
        case ComparatorClass::Lipschitz1: return lipschitz_comparator(rounds, resolution);
    }
    throw std::invalid_argument("comparator_value: unknown class");
}

} // namespace chainbench

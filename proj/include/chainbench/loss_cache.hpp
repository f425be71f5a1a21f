#pragma once

#include <optional>
#include <vector>

#include "chainbench/action_grid.hpp"
#include "chainbench/feedback.hpp"

namespace chainbench {

// Loss values fetched through the guard once per round and reused across
// node updates. Only permitted reads are cached.
class RoundLossCache {
public:
    RoundLossCache(const ActionGrid& grid, GuardedFeedback& feedback)
        : grid_(&grid), feedback_(&feedback), values_(static_cast<std::size_t>(grid.count())) {}

    double at(int index) {
        auto& slot = values_[static_cast<std::size_t>(index)];
        if (!slot) slot = feedback_->query(grid_->value(index));
        return *slot;
    }

private:
    const ActionGrid* grid_;
    GuardedFeedback* feedback_;
    std::vector<std::optional<double>> values_;
};

} // namespace chainbench

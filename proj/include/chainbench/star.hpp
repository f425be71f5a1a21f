#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "chainbench/action_grid.hpp"
#include "chainbench/dyadic.hpp"
#include "chainbench/experts.hpp"
#include "chainbench/learner.hpp"

namespace chainbench {

// Horizon- and dimension-derived parameters of the dyadic-tree learner:
// exploration gamma, tree depth M = ceil(log2(1/gamma)), per-level
// constant rates eta_m = c_T 2^{m(d/4+1)} gamma^{1/2} T^{-1/4} and
// penalties alpha_m = sum_{j=m+1..M} 2^{4-2j} eta_j (alpha_M = 0), so
// alpha_{m-1} = alpha_m + 2^{4-2m} eta_m exactly.
struct StarSchedule {
    long horizon = 0;
    int dimension = 0;
    double gamma = 0.0;
    int depth = 0;
    double rate_constant = 0.0;     // c_T
    std::vector<double> eta;        // index 0..depth
    std::vector<double> alpha;      // index 0..depth, alpha[depth] = 0
};

// Theorem tuning: gamma = T^{-1/2} / ln T for d = 1, T^{-1/(d+2/3)} for
// d > 1; c_T = 2^{-5/4} M_1^{-1/2} with M_1 = 2 for d = 1 and M_1 = M for
// 2 <= d <= 4, and c_T = 2^{d/4-3} for d >= 5. Throws InvalidHorizon for
// T < 3.
StarSchedule star_schedule(long horizon, int dimension);

// Same rate/penalty construction around an explicit gamma (and optional
// depth), for overrides.
StarSchedule star_schedule_with(long horizon, int dimension, double gamma, int depth);

// Identifies an expert node of the dyadic tree: half-depth level + 1/2,
// the flattened context cell at depth level + 1, and the flattened
// coefficient path (base-3 digits, length = level).
struct StarNodeId {
    int level;
    std::uint64_t cell;
    std::uint64_t coefficient_path;
};

// Structural counts of the full (virtual) tree and of one activation.
long star_total_exp4_nodes(int dimension, int depth);
std::vector<StarNodeId> star_active_nodes(const Context& x, int dimension, int depth);

// Learner over the alternating binning / expert tree of the dyadic
// partition. Binning levels route by the context's cell; expert levels
// aggregate the three coefficient children with penalized anchored
// estimates and constant per-level rates. Weight state is created
// sparsely on first activation; only activated nodes are updated.
class HierExp4Star : public OnlineLearner {
public:
    explicit HierExp4Star(StarSchedule schedule);

    FeedbackModel feedback_model() const override { return FeedbackModel::OneSidedFull; }
    RoundResult play_round(const Context& x, GuardedFeedback& feedback, RandomSource rng) override;

    const StarSchedule& schedule() const { return schedule_; }
    const ActionGrid& grid() const { return grid_; }

    // Number of expert nodes holding allocated weight state.
    std::size_t allocated_nodes() const;

private:
    StarSchedule schedule_;
    ActionGrid grid_;
    // Cumulative expert losses per activated node, one map per level.
    std::vector<std::unordered_map<std::uint64_t, std::array<double, 3>>> states_;
};

} // namespace chainbench

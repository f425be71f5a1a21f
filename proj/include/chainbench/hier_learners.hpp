#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "chainbench/action_grid.hpp"
#include "chainbench/covering_tree.hpp"
#include "chainbench/experts.hpp"
#include "chainbench/learner.hpp"
#include "chainbench/loss_cache.hpp"

namespace chainbench {

// Sparse distribution over grid indices, sorted by index.
using SparseDist = std::vector<std::pair<int, double>>;

// Everything one round of a tree learner computes before sampling:
// per-leaf recommendations, per-node action distributions (bottom-up
// mixtures of children under the node's expert weights), and the root
// mixture the action is drawn from, with its cumulative form.
struct RoundPlan {
    std::vector<int> leaf_recommendation;  // by node id; -1 for internal nodes
    std::vector<SparseDist> node_distribution;
    std::vector<std::vector<double>> node_weights; // expert weights q, by node id
    std::vector<double> mixture;            // p* over the grid (dense)
    std::vector<double> mixture_cdf;        // prefix sums of p*
};

// Chaining learner for one-sided full information: an expert-advice
// instance at every internal tree node, each using its children as
// experts, with anchored importance-weighted estimates and per-node
// variance-adaptive rates. The played action is drawn from the root
// distribution mixed with mass gamma on the smallest grid action.
class HierExp4 : public OnlineLearner {
public:
    HierExp4(std::shared_ptr<const CoveringTree> tree, double gamma);

    // gamma tuned by dimension: T^{-1/3} for d = 1,
    // T^{-1/3} (ln T)^{2/3} for d = 2 (clamped to 1/2), T^{-1/(d+1)} above.
    static double default_gamma(long horizon, int dimension);
    static int depth_for_gamma(double gamma); // floor(log2(1/gamma)), >= 0

    FeedbackModel feedback_model() const override { return FeedbackModel::OneSidedFull; }
    RoundResult play_round(const Context& x, GuardedFeedback& feedback, RandomSource rng) override;

    RoundPlan make_plan(const Context& x);
    int sample(const RoundPlan& plan, RandomSource& rng) const;
    void update(const RoundPlan& plan, int played_index, GuardedFeedback& feedback);

    const CoveringTree& tree() const { return *tree_; }
    const ActionGrid& grid() const { return grid_; }
    double gamma() const { return gamma_; }

private:
    struct NodeState {
        std::vector<double> cumulative; // per child
        std::optional<AdaptiveRateState> rate;
    };

    std::shared_ptr<const CoveringTree> tree_;
    double gamma_;
    ActionGrid grid_;
    std::vector<NodeState> states_;
};

// Full-information variant: same tree mixing with gamma = 0, true loss
// vectors instead of estimates, and full-information rate caps.
class HierHedge : public OnlineLearner {
public:
    HierHedge(std::shared_ptr<const CoveringTree> tree, ActionGrid action_cover);

    // epsilon tuned by dimension: T^{-1/2} for d <= 2, T^{-1/d} above.
    static double default_epsilon(long horizon, int dimension);
    static int depth_for_epsilon(double epsilon); // floor(log2(1/epsilon)), >= 0

    FeedbackModel feedback_model() const override { return FeedbackModel::Full; }
    RoundResult play_round(const Context& x, GuardedFeedback& feedback, RandomSource rng) override;

    RoundPlan make_plan(const Context& x);
    int sample(const RoundPlan& plan, RandomSource& rng) const;
    void update(const RoundPlan& plan, GuardedFeedback& feedback);

    const CoveringTree& tree() const { return *tree_; }
    const ActionGrid& grid() const { return grid_; }

    // Expert weights currently held at a node (uniform before any update).
    std::vector<double> node_weights(int node_id) const;

private:
    struct NodeState {
        std::vector<double> cumulative;
        std::optional<AdaptiveRateState> rate;
    };

    std::shared_ptr<const CoveringTree> tree_;
    ActionGrid grid_;
    std::vector<NodeState> states_;
};

} // namespace chainbench

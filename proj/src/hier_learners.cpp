#include "chainbench/hier_learners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chainbench {

namespace {

double clamp_unit_interval(double v) { return std::min(1.0, std::max(0.0, v)); }

// Mixes child distributions under weights q via a dense scratch buffer.
SparseDist mix_children(const std::vector<SparseDist>& dists,
                        const std::vector<int>& children,
                        const std::vector<double>& weights,
                        std::vector<double>& scratch,
                        std::vector<int>& touched) {
    touched.clear();
    for (std::size_t c = 0; c < children.size(); ++c) {
        const double w = weights[c];
        for (const auto& [index, p] : dists[static_cast<std::size_t>(children[c])]) {
            if (scratch[static_cast<std::size_t>(index)] == 0.0) touched.push_back(index);
            scratch[static_cast<std::size_t>(index)] += w * p;
        }
    }
    std::sort(touched.begin(), touched.end());
    SparseDist out;
    out.reserve(touched.size());
    for (int index : touched) {
        out.emplace_back(index, scratch[static_cast<std::size_t>(index)]);
        scratch[static_cast<std::size_t>(index)] = 0.0;
    }
    return out;
}

std::vector<int> support_of(const SparseDist& dist) {
    std::vector<int> indices;
    indices.reserve(dist.size());
    for (const auto& [index, p] : dist) indices.push_back(index);
    return indices;
}

std::vector<std::pair<double, double>> dense_to_value_dist(const ActionGrid& grid,
                                                           const std::vector<double>& p) {
    std::vector<std::pair<double, double>> out;
    for (int k = 0; k < grid.count(); ++k) {
        const double w = p[static_cast<std::size_t>(k)];
        if (w > 0.0) out.emplace_back(grid.value(k), w);
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// HierExp4

HierExp4::HierExp4(std::shared_ptr<const CoveringTree> tree, double gamma)
    : tree_(std::move(tree)), gamma_(gamma), grid_(make_hier_grid(tree_->depth())) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("HierExp4: gamma must be in (0,1]");

    states_.resize(static_cast<std::size_t>(tree_->node_count()));
    for (int id = 0; id < tree_->node_count(); ++id) {
        const auto& node = tree_->node(id);
        if (tree_->is_leaf(id)) continue;
        auto& state = states_[static_cast<std::size_t>(id)];
        state.cumulative.assign(node.children.size(), 0.0);
        if (node.children.size() >= 2) {
            const double range_bound = std::pow(2.0, -node.level + 3);
            state.rate = AdaptiveRateState::one_sided(static_cast<int>(node.children.size()),
                                                      gamma_, range_bound);
        }
    }
}

double HierExp4::default_gamma(long horizon, int dimension) {
    if (horizon < 1 || dimension < 1) throw std::invalid_argument("default_gamma: bad arguments");
    const double t = static_cast<double>(horizon);
    double gamma;
    if (dimension == 1) {
        gamma = std::pow(t, -1.0 / 3.0);
    } else if (dimension == 2) {
        gamma = std::pow(t, -1.0 / 3.0) * std::pow(std::log(std::max(t, 3.0)), 2.0 / 3.0);
    } else {
        gamma = std::pow(t, -1.0 / static_cast<double>(dimension + 1));
    }
    return std::min(gamma, 0.5);
}

int HierExp4::depth_for_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("depth_for_gamma: gamma in (0,1]");
    const int depth = static_cast<int>(std::floor(std::log2(1.0 / gamma) + 1e-9));
    return std::max(depth, 0);
}

RoundPlan HierExp4::make_plan(const Context& x) {
    const CoveringTree& tree = *tree_;
    RoundPlan plan;
    plan.leaf_recommendation.assign(static_cast<std::size_t>(tree.node_count()), -1);
    plan.node_distribution.resize(static_cast<std::size_t>(tree.node_count()));
    plan.node_weights.resize(static_cast<std::size_t>(tree.node_count()));

    std::vector<double> scratch(static_cast<std::size_t>(grid_.count()), 0.0);
    std::vector<int> touched;

    for (int m = tree.depth(); m >= 0; --m) {
        for (int id : tree.level_nodes(m)) {
            if (tree.is_leaf(id)) {
                const double target = tree.dictionary().evaluate(tree.node(id).function, x);
                const int rec = grid_.nearest_index(target);
                plan.leaf_recommendation[static_cast<std::size_t>(id)] = rec;
                plan.node_distribution[static_cast<std::size_t>(id)] = {{rec, 1.0}};
                continue;
            }
            const auto& node = tree.node(id);
            auto& state = states_[static_cast<std::size_t>(id)];
            std::vector<double> q;
            if (state.rate) {
                q = hedge_distribution(state.cumulative, state.rate->next_rate());
            } else {
                q.assign(node.children.size(), 1.0); // single child
            }
            plan.node_distribution[static_cast<std::size_t>(id)] =
                mix_children(plan.node_distribution, node.children, q, scratch, touched);
            plan.node_weights[static_cast<std::size_t>(id)] = std::move(q);
        }
    }

    plan.mixture.assign(static_cast<std::size_t>(grid_.count()), 0.0);
    for (const auto& [index, p] : plan.node_distribution[static_cast<std::size_t>(tree.root())])
        plan.mixture[static_cast<std::size_t>(index)] = (1.0 - gamma_) * p;
    plan.mixture[0] += gamma_;

    plan.mixture_cdf.resize(plan.mixture.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < plan.mixture.size(); ++i) {
        cum += plan.mixture[i];
        plan.mixture_cdf[i] = cum;
    }
    return plan;
}

int HierExp4::sample(const RoundPlan& plan, RandomSource& rng) const {
    return rng.sample_categorical(plan.mixture);
}

void HierExp4::update(const RoundPlan& plan, int played_index, GuardedFeedback& feedback) {
    RoundLossCache cache(grid_, feedback);
    const auto observed = [&cache](int k) { return cache.at(k); };

    for (int id = 0; id < tree_->node_count(); ++id) {
        if (tree_->is_leaf(id)) continue;
        const auto& node = tree_->node(id);
        auto& state = states_[static_cast<std::size_t>(id)];

        const std::vector<int> effective = support_of(plan.node_distribution[static_cast<std::size_t>(id)]);
        const std::vector<double> estimates =
            exp4_range_estimates(observed, effective, plan.mixture_cdf, played_index);

        std::vector<double> expert_losses(node.children.size(), 0.0);
        for (std::size_t c = 0; c < node.children.size(); ++c) {
            double dot = 0.0;
            for (const auto& [index, p] : plan.node_distribution[static_cast<std::size_t>(node.children[c])])
                dot += p * estimates[static_cast<std::size_t>(index)];
            expert_losses[c] = dot;
        }
        for (std::size_t c = 0; c < expert_losses.size(); ++c) state.cumulative[c] += expert_losses[c];
        if (state.rate)
            state.rate->add_round(plan.node_weights[static_cast<std::size_t>(id)], expert_losses);
    }
}

RoundResult HierExp4::play_round(const Context& x, GuardedFeedback& feedback, RandomSource rng) {
    if (feedback.model() != FeedbackModel::OneSidedFull)
        throw std::logic_error("HierExp4 requires one-sided full information feedback");

    const RoundPlan plan = make_plan(x);
    const int played = sample(plan, rng);
    feedback.record_play(grid_.value(played), played);
    update(plan, played, feedback);

    RoundResult result;
    result.action_index = played;
    result.action_value = grid_.value(played);
    result.action_distribution = dense_to_value_dist(grid_, plan.mixture);
    return result;
}

// ---------------------------------------------------------------------------
// HierHedge

HierHedge::HierHedge(std::shared_ptr<const CoveringTree> tree, ActionGrid action_cover)
    : tree_(std::move(tree)), grid_(action_cover) {
    states_.resize(static_cast<std::size_t>(tree_->node_count()));
    for (int id = 0; id < tree_->node_count(); ++id) {
        const auto& node = tree_->node(id);
        if (tree_->is_leaf(id)) continue;
        auto& state = states_[static_cast<std::size_t>(id)];
        state.cumulative.assign(node.children.size(), 0.0);
        if (node.children.size() >= 2) {
            const double range_bound = std::pow(2.0, -node.level + 3);
            state.rate = AdaptiveRateState::full_information(static_cast<int>(node.children.size()),
                                                             range_bound);
        }
    }
}

double HierHedge::default_epsilon(long horizon, int dimension) {
    if (horizon < 1 || dimension < 1) throw std::invalid_argument("default_epsilon: bad arguments");
    const double t = static_cast<double>(horizon);
    const double exponent = dimension <= 2 ? 0.5 : 1.0 / static_cast<double>(dimension);
    return std::min(std::pow(t, -exponent), 1.0);
}

int HierHedge::depth_for_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("depth_for_epsilon: epsilon in (0,1]");
    const int depth = static_cast<int>(std::floor(std::log2(1.0 / epsilon) + 1e-9));
    return std::max(depth, 0);
}

RoundPlan HierHedge::make_plan(const Context& x) {
    const CoveringTree& tree = *tree_;
    RoundPlan plan;
    plan.leaf_recommendation.assign(static_cast<std::size_t>(tree.node_count()), -1);
    plan.node_distribution.resize(static_cast<std::size_t>(tree.node_count()));
    plan.node_weights.resize(static_cast<std::size_t>(tree.node_count()));

    std::vector<double> scratch(static_cast<std::size_t>(grid_.count()), 0.0);
    std::vector<int> touched;

    for (int m = tree.depth(); m >= 0; --m) {
        for (int id : tree.level_nodes(m)) {
            if (tree.is_leaf(id)) {
                const double target =
                    clamp_unit_interval(tree.dictionary().evaluate(tree.node(id).function, x));
                const int rec = grid_.nearest_index(target);
                plan.leaf_recommendation[static_cast<std::size_t>(id)] = rec;
                plan.node_distribution[static_cast<std::size_t>(id)] = {{rec, 1.0}};
                continue;
            }
            const auto& node = tree.node(id);
            auto& state = states_[static_cast<std::size_t>(id)];
            std::vector<double> q;
            if (state.rate) {
                q = hedge_distribution(state.cumulative, state.rate->next_rate());
            } else {
                q.assign(node.children.size(), 1.0);
            }
            plan.node_distribution[static_cast<std::size_t>(id)] =
                mix_children(plan.node_distribution, node.children, q, scratch, touched);
            plan.node_weights[static_cast<std::size_t>(id)] = std::move(q);
        }
    }

    plan.mixture.assign(static_cast<std::size_t>(grid_.count()), 0.0);
    for (const auto& [index, p] : plan.node_distribution[static_cast<std::size_t>(tree.root())])
        plan.mixture[static_cast<std::size_t>(index)] = p;

    plan.mixture_cdf.resize(plan.mixture.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < plan.mixture.size(); ++i) {
        cum += plan.mixture[i];
        plan.mixture_cdf[i] = cum;
    }
    return plan;
}

int HierHedge::sample(const RoundPlan& plan, RandomSource& rng) const {
    return rng.sample_categorical(plan.mixture);
}

void HierHedge::update(const RoundPlan& plan, GuardedFeedback& feedback) {
    RoundLossCache cache(grid_, feedback);

    for (int id = 0; id < tree_->node_count(); ++id) {
        if (tree_->is_leaf(id)) continue;
        const auto& node = tree_->node(id);
        auto& state = states_[static_cast<std::size_t>(id)];

        std::vector<double> expert_losses(node.children.size(), 0.0);
        for (std::size_t c = 0; c < node.children.size(); ++c) {
            double dot = 0.0;
            for (const auto& [index, p] : plan.node_distribution[static_cast<std::size_t>(node.children[c])])
                dot += p * cache.at(index);
            expert_losses[c] = dot;
        }
        for (std::size_t c = 0; c < expert_losses.size(); ++c) state.cumulative[c] += expert_losses[c];
        if (state.rate)
            state.rate->add_round(plan.node_weights[static_cast<std::size_t>(id)], expert_losses);
    }
}

RoundResult HierHedge::play_round(const Context& x, GuardedFeedback& feedback, RandomSource rng) {
    if (feedback.model() != FeedbackModel::Full)
        throw std::logic_error("HierHedge requires full information feedback");

    const RoundPlan plan = make_plan(x);
    const int played = sample(plan, rng);
    feedback.record_play(grid_.value(played), played);
    update(plan, feedback);

    RoundResult result;
    result.action_index = played;
    result.action_value = grid_.value(played);
    result.action_distribution = dense_to_value_dist(grid_, plan.mixture);
    return result;
}

std::vector<double> HierHedge::node_weights(int node_id) const {
    const auto& state = states_[static_cast<std::size_t>(node_id)];
    if (state.cumulative.empty()) throw std::invalid_argument("node_weights: leaf node");
    if (!state.rate) return {1.0};
    // Peek without advancing the running-minimum clamp.
    AdaptiveRateState copy = *state.rate;
    return hedge_distribution(state.cumulative, copy.next_rate());
}

} // namespace chainbench

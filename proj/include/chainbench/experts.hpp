#pragma once

#include <functional>
#include <span>
#include <vector>

#include "chainbench/action_grid.hpp"
#include "chainbench/feedback.hpp"
#include "chainbench/rng.hpp"

namespace chainbench {

// Softmax of negated cumulative losses, computed with a max-shift so
// arbitrarily large cumulative estimates never produce non-finite
// weights. Deterministic; always a probability vector.
std::vector<double> hedge_distribution(std::span<const double> cumulative_losses, double rate);

// Cumulative-loss state for Hedge over a fixed expert set.
class HedgeState {
public:
    HedgeState(int experts, double rate);

    int experts() const { return static_cast<int>(cumulative_.size()); }
    double rate() const { return rate_; }
    void set_rate(double rate);

    std::vector<double> distribution() const { return hedge_distribution(cumulative_, rate_); }
    void accumulate(std::span<const double> losses);
    const std::vector<double>& cumulative() const { return cumulative_; }

private:
    std::vector<double> cumulative_;
    double rate_;
};

// Variance-adaptive learning rate
//
//     eta_t = min{ cap, sqrt(2 (sqrt(2)-1) ln N / ((e-2) V_{t-1})) }
//
// where V_{t-1} is the cumulative weighted variance of the expert losses
// seen so far. V = 0 makes the variance branch +infinity, so the cap is
// returned. The produced rate is additionally clamped to be nonincreasing
// across calls. Two cap conventions are used in this project: cap =
// gamma / (2 E) for one-sided importance-weighted nodes (local loss range
// 2E/gamma) and cap = 1/E for full-information nodes (local range E);
// both are 1 over the local loss range.
class AdaptiveRateState {
public:
    static AdaptiveRateState one_sided(int experts, double gamma, double range_bound);
    static AdaptiveRateState full_information(int experts, double range_bound);

    // Rate for the upcoming round; applies the running-minimum clamp.
    double next_rate();

    // Fold in one round of expert losses under weights q.
    void add_round(std::span<const double> weights, std::span<const double> losses);

    double cumulative_variance() const { return variance_; }
    double cap() const { return cap_; }

private:
    AdaptiveRateState(int experts, double cap);

    double cap_;
    double log_experts_;
    double variance_ = 0.0;
    double previous_rate_;
};

// One-sided-feedback Exp3 variant over the grid {(k-1)*gamma}: mixes the
// exponential-weights distribution with mass gamma on the smallest action
// and feeds every observable action's importance-weighted loss back.
class Exp3Rtb {
public:
    explicit Exp3Rtb(double gamma);

    const ActionGrid& grid() const { return grid_; }
    double gamma() const { return gamma_; }

    std::vector<double> sampling_distribution() const;

    // One full round: sample, observe all permitted losses, update.
    // Returns the played 0-based grid index.
    int round(GuardedFeedback& feedback, RandomSource& rng);

private:
    double gamma_;
    ActionGrid grid_;
    HedgeState hedge_;
};

// Importance-weighted loss estimates anchored at the top of the effective
// action set, for an expert-advice node observing losses at all actions
// >= the played one:
//
//   est(k) = (loss(k) - loss(max set)) / cdf(k) * 1{played <= k}
//
// for k in `effective_set` (0 elsewhere). `sampling_cdf` is the cumulative
// sampling distribution; `observed_loss(k)` is only invoked for k >=
// played_index.
std::vector<double> exp4_range_estimates(const std::function<double(int)>& observed_loss,
                                         std::span<const int> effective_set,
                                         std::span<const double> sampling_cdf,
                                         int played_index);

// Penalized variant:
//
//   est(k) = (loss(k) - loss(max set) + range_bound) / cdf(k) * 1{played <= k}
//            - penalty / cdf(k) + penalty / floor_gamma
//
// for k in `effective_set` (0 elsewhere). With cdf(k) >= floor_gamma the
// estimates are nonnegative whenever the true range bound holds.
std::vector<double> exp4_penalized_estimates(const std::function<double(int)>& observed_loss,
                                             std::span<const int> effective_set,
                                             std::span<const double> sampling_cdf,
                                             int played_index,
                                             double range_bound,
                                             double penalty,
                                             double floor_gamma);

// True iff entries are nonnegative and sum to 1 within `tolerance`.
bool is_probability_vector(std::span<const double> p, double tolerance = 1e-9);

} // namespace chainbench

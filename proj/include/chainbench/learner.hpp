#pragma once

#include <utility>
#include <vector>

#include "chainbench/context.hpp"
#include "chainbench/feedback.hpp"
#include "chainbench/rng.hpp"

namespace chainbench {

// What a learner did in one round: the action it committed to and the
// sampling law it drew from, as (action value, probability) pairs. The
// law lets the harness record expected losses without the learner ever
// touching feedback it is not entitled to.
struct RoundResult {
    double action_value = 0.0;
    int action_index = 0;
    std::vector<std::pair<double, double>> action_distribution;
};

class OnlineLearner {
public:
    virtual ~OnlineLearner() = default;

    virtual FeedbackModel feedback_model() const = 0;

    // Play one round against an armed feedback guard: choose an action,
    // record it with the guard, read whatever feedback the model permits
    // and update internal state. The stream is the round's own split.
    virtual RoundResult play_round(const Context& x, GuardedFeedback& feedback, RandomSource round_rng) = 0;
};

} // namespace chainbench

#include "chainbench/flat.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chainbench {

BallCover::BallCover(double radius) : radius_(radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("BallCover: radius must be > 0");
}

BallCover::Lookup BallCover::lookup_or_create(const Context& x) {
    std::size_t best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        const double d = centers_[i].distance_to(x);
        if (d < best_distance) {
            best_distance = d;
            best = i;
        }
    }
    if (best_distance <= radius_) return {best, false};
    centers_.push_back(x);
    return {centers_.size() - 1, true};
}

Exp3::Exp3(ActionGrid grid, double rate) : grid_(grid), hedge_(grid.count(), rate) {}

int Exp3::round(GuardedFeedback& feedback, RandomSource& rng) {
    if (feedback.model() != FeedbackModel::Bandit)
        throw std::logic_error("Exp3 requires bandit feedback");

    const std::vector<double> p = hedge_.distribution();
    const int played = rng.sample_categorical(p);
    feedback.record_play(grid_.value(played), played);

    std::vector<double> estimates(p.size(), 0.0);
    estimates[static_cast<std::size_t>(played)] =
        feedback.query(grid_.value(played)) / p[static_cast<std::size_t>(played)];
    hedge_.accumulate(estimates);
    return played;
}

double ContextualExp3::default_epsilon(long horizon, int dimension) {
    if (horizon < 1 || dimension < 1) throw std::invalid_argument("default_epsilon: bad arguments");
    const double t = static_cast<double>(horizon);
    const double exponent = 1.0 / static_cast<double>(1 + dimension + 2);
    const double eps = std::pow(std::log(std::max(t, 3.0)), 2.0 * exponent) * std::pow(t, -exponent);
    return std::min(eps, 1.0);
}

ContextualExp3::ContextualExp3(double epsilon, int dimension, long horizon)
    : cover_(epsilon), grid_(make_cover_grid(epsilon)) {
    if (horizon < 1) throw std::invalid_argument("ContextualExp3: horizon must be >= 1");
    const double k = grid_.count();
    const double ball_bound = std::pow(2.0 / epsilon, static_cast<double>(dimension));
    rate_ = std::sqrt(2.0 * ball_bound * std::log(std::max(k, 2.0)) / (static_cast<double>(horizon) * k));
}

RoundResult ContextualExp3::play_round(const Context& x, GuardedFeedback& feedback, RandomSource rng) {
    const auto lookup = cover_.lookup_or_create(x);
    if (lookup.created) balls_.emplace_back(grid_, rate_);
    Exp3& ball = balls_[lookup.index];

    const std::vector<double> p = ball.distribution();
    const int played = ball.round(feedback, rng);

    RoundResult result;
    result.action_index = played;
    result.action_value = grid_.value(played);
    result.action_distribution.reserve(p.size());
    for (int k = 0; k < grid_.count(); ++k)
        result.action_distribution.emplace_back(grid_.value(k), p[static_cast<std::size_t>(k)]);
    return result;
}

double ContextualRtb::default_epsilon(long horizon, int dimension) {
    if (horizon < 1 || dimension < 1) throw std::invalid_argument("default_epsilon: bad arguments");
    return std::pow(static_cast<double>(horizon), -1.0 / static_cast<double>(dimension + 2));
}

ContextualRtb::ContextualRtb(double epsilon, double gamma) : cover_(epsilon), gamma_(gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("ContextualRtb: gamma must be in (0,1)");
}

RoundResult ContextualRtb::play_round(const Context& x, GuardedFeedback& feedback, RandomSource rng) {
    const auto lookup = cover_.lookup_or_create(x);
    if (lookup.created) balls_.emplace_back(gamma_);
    Exp3Rtb& ball = balls_[lookup.index];

    const std::vector<double> q = ball.sampling_distribution();
    const int played = ball.round(feedback, rng);

    RoundResult result;
    result.action_index = played;
    result.action_value = ball.grid().value(played);
    result.action_distribution.reserve(q.size());
    for (int k = 0; k < ball.grid().count(); ++k)
        result.action_distribution.emplace_back(ball.grid().value(k), q[static_cast<std::size_t>(k)]);
    return result;
}

} // namespace chainbench

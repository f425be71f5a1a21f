#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "chainbench/action_grid.hpp"
#include "chainbench/experts.hpp"
#include "chainbench/learner.hpp"

namespace chainbench {

// Incrementally grown cover of the context space by balls of a fixed
// radius. A context is routed to the closest existing center if one lies
// within the radius (ties toward the earliest-created ball); otherwise a
// new ball is created around it. Centers therefore stay pairwise more
// than `radius` apart, and routing depends only on the context sequence.
class BallCover {
public:
    explicit BallCover(double radius);

    double radius() const { return radius_; }
    std::size_t size() const { return centers_.size(); }
    const Context& center(std::size_t i) const { return centers_[i]; }

    struct Lookup {
        std::size_t index;
        bool created;
    };
    Lookup lookup_or_create(const Context& x);

private:
    double radius_;
    std::vector<Context> centers_;
};

// Bandit Exp3 over a fixed grid: exponential weights on importance-
// weighted losses of the single observed action.
class Exp3 {
public:
    Exp3(ActionGrid grid, double rate);

    const ActionGrid& grid() const { return grid_; }
    std::vector<double> distribution() const { return hedge_.distribution(); }

    int round(GuardedFeedback& feedback, RandomSource& rng);

private:
    ActionGrid grid_;
    HedgeState hedge_;
};

// Ball cover with one fresh Exp3 instance per ball (bandit feedback).
class ContextualExp3 : public OnlineLearner {
public:
    // Fresh learner tuned from the horizon: every ball runs Exp3 on an
    // eps-cover grid with the fixed rate
    // sqrt(2 * (2/eps)^d * ln K / (T * K)), the volumetric bound standing
    // in for the unknown final ball count.
    ContextualExp3(double epsilon, int dimension, long horizon);

    // Radius tuned as (ln T)^{2/(p+d+2)} T^{-1/(p+d+2)} with p = 1.
    static double default_epsilon(long horizon, int dimension);

    FeedbackModel feedback_model() const override { return FeedbackModel::Bandit; }
    RoundResult play_round(const Context& x, GuardedFeedback& feedback, RandomSource rng) override;

    const BallCover& cover() const { return cover_; }
    double epsilon() const { return cover_.radius(); }
    const ActionGrid& grid() const { return grid_; }
    double rate() const { return rate_; }

private:
    BallCover cover_;
    ActionGrid grid_;
    double rate_;
    std::vector<Exp3> balls_;
};

// Ball cover with one fresh Exp3-RTB instance per ball (one-sided full
// information): radius eps = T^{-1/(d+2)} and per-ball exploration
// gamma = eps.
class ContextualRtb : public OnlineLearner {
public:
    ContextualRtb(double epsilon, double gamma);

    static double default_epsilon(long horizon, int dimension);

    FeedbackModel feedback_model() const override { return FeedbackModel::OneSidedFull; }
    RoundResult play_round(const Context& x, GuardedFeedback& feedback, RandomSource rng) override;

    const BallCover& cover() const { return cover_; }
    double gamma() const { return gamma_; }

private:
    BallCover cover_;
    double gamma_;
    std::vector<Exp3Rtb> balls_;
};

} // namespace chainbench

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "chainbench/errors.hpp"
#include "chainbench/loss.hpp"

namespace chainbench {

enum class FeedbackModel { Bandit, OneSidedFull, Full };

inline const char* to_string(FeedbackModel m) {
    switch (m) {
        case FeedbackModel::Bandit: return "bandit";
        case FeedbackModel::OneSidedFull: return "one-sided-full";
        case FeedbackModel::Full: return "full";
    }
    return "?";
}

// Per-round loss oracle that enforces which action values a learner may
// read under its feedback model:
//   Bandit        exactly the played value
//   OneSidedFull  any value >= the played value
//   Full          everything
//
// The guard is re-armed by the harness each round; query and violation
// counters accumulate over the whole run. A forbidden query bumps the
// violation counter and raises ForbiddenQuery so an audit can both catch
// and count it. A compliant run ends with zero violations.
class GuardedFeedback {
public:
    explicit GuardedFeedback(FeedbackModel model) : model_(model) {}

    FeedbackModel model() const { return model_; }

    void arm(LossFunction loss) {
        loss_.emplace(std::move(loss));
        played_.reset();
    }

    void record_play(double value, int index) {
        if (!loss_) throw std::logic_error("GuardedFeedback: round not armed");
        played_ = Play{value, index};
    }

    bool play_recorded() const { return played_.has_value(); }
    double played_value() const { return require_play().value; }
    int played_index() const { return require_play().index; }

    double query(double y) {
        const Play& play = require_play();
        bool permitted = true;
        switch (model_) {
            case FeedbackModel::Bandit: permitted = (y == play.value); break;
            case FeedbackModel::OneSidedFull: permitted = (y >= play.value); break;
            case FeedbackModel::Full: permitted = true; break;
        }
        if (!permitted) {
            ++violations_;
            throw ForbiddenQuery("feedback model " + std::string(to_string(model_)) +
                                 " forbids reading loss at y=" + std::to_string(y) +
                                 " after playing " + std::to_string(play.value));
        }
        ++queries_;
        return (*loss_)(y);
    }

    std::int64_t queries() const { return queries_; }
    std::int64_t violations() const { return violations_; }

private:
    struct Play {
        double value;
        int index;
    };

    const Play& require_play() const {
        if (!played_) throw std::logic_error("GuardedFeedback: no played action recorded");
        return *played_;
    }

    FeedbackModel model_;
    std::optional<LossFunction> loss_;
    std::optional<Play> played_;
    std::int64_t queries_ = 0;
    std::int64_t violations_ = 0;
};

} // namespace chainbench

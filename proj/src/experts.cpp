#include "chainbench/experts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace chainbench {

std::vector<double> hedge_distribution(std::span<const double> cumulative_losses, double rate) {
    if (cumulative_losses.empty()) throw std::invalid_argument("hedge_distribution: no experts");
    if (!(rate > 0.0)) throw std::invalid_argument("hedge_distribution: rate must be > 0");

    const double shift = *std::min_element(cumulative_losses.begin(), cumulative_losses.end());
    std::vector<double> p(cumulative_losses.size());
    double z = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::exp(-rate * (cumulative_losses[i] - shift));
        z += p[i];
    }
    for (double& w : p) w /= z;
    return p;
}

HedgeState::HedgeState(int experts, double rate) : cumulative_(static_cast<std::size_t>(experts), 0.0), rate_(rate) {
    if (experts < 1) throw std::invalid_argument("HedgeState: experts must be >= 1");
    if (!(rate > 0.0)) throw std::invalid_argument("HedgeState: rate must be > 0");
}

void HedgeState::set_rate(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("HedgeState: rate must be > 0");
    rate_ = rate;
}

void HedgeState::accumulate(std::span<const double> losses) {
    if (losses.size() != cumulative_.size()) throw std::invalid_argument("HedgeState: size mismatch");
    for (std::size_t i = 0; i < cumulative_.size(); ++i) cumulative_[i] += losses[i];
}

AdaptiveRateState::AdaptiveRateState(int experts, double cap)
    : cap_(cap), log_experts_(std::log(static_cast<double>(experts))), previous_rate_(cap) {
    if (experts < 2) throw std::invalid_argument("AdaptiveRateState: experts must be >= 2");
    if (!(cap > 0.0)) throw std::invalid_argument("AdaptiveRateState: cap must be > 0");
}

AdaptiveRateState AdaptiveRateState::one_sided(int experts, double gamma, double range_bound) {
    if (!(gamma > 0.0) || !(range_bound > 0.0))
        throw std::invalid_argument("AdaptiveRateState: gamma and range bound must be > 0");
    return AdaptiveRateState(experts, gamma / (2.0 * range_bound));
}

AdaptiveRateState AdaptiveRateState::full_information(int experts, double range_bound) {
    if (!(range_bound > 0.0)) throw std::invalid_argument("AdaptiveRateState: range bound must be > 0");
    return AdaptiveRateState(experts, 1.0 / range_bound);
}

double AdaptiveRateState::next_rate() {
    double rate = cap_;
    if (variance_ > 0.0) {
        const double variance_term =
            std::sqrt(2.0 * (std::sqrt(2.0) - 1.0) * log_experts_ / ((std::exp(1.0) - 2.0) * variance_));
        rate = std::min(rate, variance_term);
    }
    rate = std::min(rate, previous_rate_);
    previous_rate_ = rate;
    return rate;
}

void AdaptiveRateState::add_round(std::span<const double> weights, std::span<const double> losses) {
    if (weights.size() != losses.size()) throw std::invalid_argument("AdaptiveRateState: size mismatch");
    double mean = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) mean += weights[i] * losses[i];
    double var = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double centered = losses[i] - mean;
        var += weights[i] * centered * centered;
    }
    variance_ += var;
}

Exp3Rtb::Exp3Rtb(double gamma)
    : gamma_(gamma), grid_(make_rtb_grid(gamma)), hedge_(grid_.count(), gamma / 2.0) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("Exp3Rtb: gamma must be in (0,1)");
}

std::vector<double> Exp3Rtb::sampling_distribution() const {
    std::vector<double> q = hedge_.distribution();
    for (double& w : q) w *= 1.0 - gamma_;
    q[0] += gamma_;
    return q;
}

int Exp3Rtb::round(GuardedFeedback& feedback, RandomSource& rng) {
    if (feedback.model() != FeedbackModel::OneSidedFull)
        throw std::logic_error("Exp3Rtb requires one-sided full information feedback");

    const std::vector<double> q = sampling_distribution();
    const int played = rng.sample_categorical(q);
    feedback.record_play(grid_.value(played), played);

    std::vector<double> estimates(q.size(), 0.0);
    double cdf = 0.0;
    for (int k = 0; k < grid_.count(); ++k) {
        cdf += q[static_cast<std::size_t>(k)];
        if (k < played) continue;
        estimates[static_cast<std::size_t>(k)] = feedback.query(grid_.value(k)) / cdf;
    }
    hedge_.accumulate(estimates);
    return played;
}

namespace {

void validate_estimator_inputs(std::span<const int> effective_set,
                               std::span<const double> sampling_cdf,
                               int played_index) {
    if (effective_set.empty()) throw std::invalid_argument("estimates: empty effective set");
    if (sampling_cdf.empty()) throw std::invalid_argument("estimates: empty cdf");
    if (played_index < 0 || played_index >= static_cast<int>(sampling_cdf.size()))
        throw std::invalid_argument("estimates: played index out of range");
    double prev = 0.0;
    for (double c : sampling_cdf) {
        if (c < prev - 1e-12) throw std::invalid_argument("estimates: cdf must be nondecreasing");
        prev = c;
    }
    if (std::abs(sampling_cdf.back() - 1.0) > 1e-6)
        throw std::invalid_argument("estimates: cdf must end at 1");
    prev = -1.0;
    for (int k : effective_set) {
        if (k <= static_cast<int>(prev) || k >= static_cast<int>(sampling_cdf.size()))
            throw std::invalid_argument("estimates: effective set must be sorted and in range");
        prev = k;
    }
}

} // namespace

std::vector<double> exp4_range_estimates(const std::function<double(int)>& observed_loss,
                                         std::span<const int> effective_set,
                                         std::span<const double> sampling_cdf,
                                         int played_index) {
    validate_estimator_inputs(effective_set, sampling_cdf, played_index);
    std::vector<double> estimates(sampling_cdf.size(), 0.0);

    const int anchor = effective_set.back();
    if (played_index > anchor) return estimates; // nothing observable in the set

    const double anchor_loss = observed_loss(anchor);
    for (int k : effective_set) {
        if (k < played_index) continue;
        if (k > anchor) throw AnchorUnobservable("effective set exceeds its own anchor");
        estimates[static_cast<std::size_t>(k)] =
            (observed_loss(k) - anchor_loss) / sampling_cdf[static_cast<std::size_t>(k)];
    }
    return estimates;
}

std::vector<double> exp4_penalized_estimates(const std::function<double(int)>& observed_loss,
                                             std::span<const int> effective_set,
                                             std::span<const double> sampling_cdf,
                                             int played_index,
                                             double range_bound,
                                             double penalty,
                                             double floor_gamma) {
    validate_estimator_inputs(effective_set, sampling_cdf, played_index);
    if (!(range_bound > 0.0) || penalty < 0.0 || !(floor_gamma > 0.0))
        throw std::invalid_argument("exp4_penalized_estimates: bad parameters");

    std::vector<double> estimates(sampling_cdf.size(), 0.0);
    const int anchor = effective_set.back();
    const bool anchor_observable = played_index <= anchor;
    const double anchor_loss = anchor_observable ? observed_loss(anchor) : 0.0;

    for (int k : effective_set) {
        const double cdf = sampling_cdf[static_cast<std::size_t>(k)];
        double value = -penalty / cdf + penalty / floor_gamma;
        if (k >= played_index) {
            if (!anchor_observable) throw AnchorUnobservable("anchor below played action");
            value += (observed_loss(k) - anchor_loss + range_bound) / cdf;
        }
        estimates[static_cast<std::size_t>(k)] = value;
    }
    return estimates;
}

bool is_probability_vector(std::span<const double> p, double tolerance) {
    double sum = 0.0;
    for (double w : p) {
        if (w < 0.0) return false;
        sum += w;
    }
    return std::abs(sum - 1.0) <= tolerance;
}

} // namespace chainbench

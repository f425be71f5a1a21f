#include "chainbench/star.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chainbench/errors.hpp"
#include "chainbench/loss_cache.hpp"

namespace chainbench {

namespace {

// Key of an expert node inside its level map: the flattened cell index
// scaled past the 3^level coefficient paths.
std::uint64_t node_key(std::uint64_t cell, std::uint64_t coefficient_path, int level) {
    std::uint64_t pow3 = 1;
    for (int i = 0; i < level; ++i) pow3 *= 3;
    return cell * pow3 + coefficient_path;
}

std::vector<double> build_rates(long horizon, int dimension, double gamma, int depth, double c) {
    std::vector<double> eta(static_cast<std::size_t>(depth) + 1);
    const double scale = std::sqrt(gamma) * std::pow(static_cast<double>(horizon), -0.25);
    for (int m = 0; m <= depth; ++m)
        eta[static_cast<std::size_t>(m)] =
            c * std::pow(2.0, m * (static_cast<double>(dimension) / 4.0 + 1.0)) * scale;
    return eta;
}

std::vector<double> build_penalties(const std::vector<double>& eta, int depth) {
    std::vector<double> alpha(static_cast<std::size_t>(depth) + 1, 0.0);
    for (int m = depth; m >= 1; --m)
        alpha[static_cast<std::size_t>(m - 1)] =
            alpha[static_cast<std::size_t>(m)] + std::pow(2.0, 4 - 2 * m) * eta[static_cast<std::size_t>(m)];
    return alpha;
}

double rate_constant_for(int dimension, int depth) {
    if (dimension == 1) return std::pow(2.0, -1.25) / std::sqrt(2.0);
    if (dimension <= 4) return std::pow(2.0, -1.25) / std::sqrt(static_cast<double>(depth));
    return std::pow(2.0, static_cast<double>(dimension) / 4.0 - 3.0);
}

} // namespace

StarSchedule star_schedule(long horizon, int dimension) {
    if (horizon < 3) throw InvalidHorizon("star_schedule: horizon must be >= 3");
    if (dimension < 1) throw std::invalid_argument("star_schedule: dimension must be >= 1");

    const double t = static_cast<double>(horizon);
    double gamma;
    if (dimension == 1) {
        gamma = std::pow(t, -0.5) / std::log(t);
    } else {
        gamma = std::pow(t, -1.0 / (static_cast<double>(dimension) + 2.0 / 3.0));
    }
    const int depth = std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / gamma) - 1e-9)));
    return star_schedule_with(horizon, dimension, gamma, depth);
}

StarSchedule star_schedule_with(long horizon, int dimension, double gamma, int depth) {
    if (horizon < 3) throw InvalidHorizon("star_schedule: horizon must be >= 3");
    if (dimension < 1) throw std::invalid_argument("star_schedule: dimension must be >= 1");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("star_schedule: gamma must be in (0,1)");
    if (depth < 1) throw std::invalid_argument("star_schedule: depth must be >= 1");

    StarSchedule schedule;
    schedule.horizon = horizon;
    schedule.dimension = dimension;
    schedule.gamma = gamma;
    schedule.depth = depth;
    schedule.rate_constant = rate_constant_for(dimension, depth);
    schedule.eta = build_rates(horizon, dimension, gamma, depth, schedule.rate_constant);
    schedule.alpha = build_penalties(schedule.eta, depth);
    return schedule;
}

long star_total_exp4_nodes(int dimension, int depth) {
    if (dimension < 1 || depth < 1) throw std::invalid_argument("star_total_exp4_nodes: bad arguments");
    // Walk the levels multiplying out the branching instead of using the
    // closed form: an expert node at half-depth m+1/2 is a cell path of
    // length m+1 together with a coefficient path of length m.
    long total = 0;
    long cells = 1;       // 2^{d m}
    long coefficients = 1; // 3^m
    const long cell_branch = 1L << dimension;
    for (int m = 0; m < depth; ++m) {
        total += cells * cell_branch * coefficients;
        cells *= cell_branch;
        coefficients *= 3;
    }
    return total;
}

std::vector<StarNodeId> star_active_nodes(const Context& x, int dimension, int depth) {
    if (static_cast<int>(x.dimension()) != dimension)
        throw std::invalid_argument("star_active_nodes: dimension mismatch");
    const DyadicPath path(x, depth);
    std::vector<StarNodeId> active;
    long coefficients = 1;
    for (int m = 0; m < depth; ++m) {
        const std::uint64_t cell = path.cell_index(m + 1);
        for (long c = 0; c < coefficients; ++c)
            active.push_back({m, cell, static_cast<std::uint64_t>(c)});
        coefficients *= 3;
    }
    return active;
}

HierExp4Star::HierExp4Star(StarSchedule schedule)
    : schedule_(std::move(schedule)), grid_(make_star_grid(schedule_.depth)) {
    states_.resize(static_cast<std::size_t>(schedule_.depth));
}

std::size_t HierExp4Star::allocated_nodes() const {
    std::size_t n = 0;
    for (const auto& level : states_) n += level.size();
    return n;
}

RoundResult HierExp4Star::play_round(const Context& x, GuardedFeedback& feedback, RandomSource rng) {
    if (feedback.model() != FeedbackModel::OneSidedFull)
        throw std::logic_error("HierExp4Star requires one-sided full information feedback");

    const int depth = schedule_.depth;
    const int action_count = grid_.count();
    const DyadicPath path(x, depth);

    // Bottom-up distributions along the activated skeleton. dists[c_idx]
    // at level m is the distribution of the value node reached by the
    // coefficient choices encoded in c_idx (base 3, most significant digit
    // first), given x's cell path.
    long width = 1;
    for (int m = 0; m < depth; ++m) width *= 3;

    // Leaves: coefficient paths of length `depth`.
    std::vector<std::vector<std::pair<int, double>>> current(static_cast<std::size_t>(width));
    for (long c_idx = 0; c_idx < width; ++c_idx) {
        long rest = c_idx;
        // Digits are most-significant-first: c_1 is the highest digit.
        int label_times_k = 1 << (depth - 1); // 2^{M-1} == (1/2) * 2^M
        long divisor = width / 3;
        for (int m = 1; m <= depth; ++m) {
            const int digit = static_cast<int>(rest / divisor);
            rest %= divisor;
            if (divisor > 1) divisor /= 3;
            const int c = digit - 1;
            label_times_k += c * (1 << (depth - m)); // c * 2^{M-m}
        }
        const int one_based = std::clamp(label_times_k, 1, action_count);
        current[static_cast<std::size_t>(c_idx)] = {{one_based - 1, 1.0}};
    }

    std::vector<std::vector<std::vector<std::pair<int, double>>>> dists_by_level(
        static_cast<std::size_t>(depth) + 1);
    dists_by_level[static_cast<std::size_t>(depth)] = std::move(current);

    std::vector<double> scratch(static_cast<std::size_t>(action_count), 0.0);
    std::vector<int> touched;

    for (int m = depth - 1; m >= 0; --m) {
        width /= 3;
        auto& below = dists_by_level[static_cast<std::size_t>(m + 1)];
        std::vector<std::vector<std::pair<int, double>>> mixed(static_cast<std::size_t>(width));
        const std::uint64_t cell = path.cell_index(m + 1);
        auto& level_state = states_[static_cast<std::size_t>(m)];
        for (long c_idx = 0; c_idx < width; ++c_idx) {
            const std::uint64_t key = node_key(cell, static_cast<std::uint64_t>(c_idx), m);
            std::array<double, 3> q{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
            if (auto it = level_state.find(key); it != level_state.end()) {
                const std::vector<double> hedge =
                    hedge_distribution(std::span<const double>(it->second.data(), 3),
                                       schedule_.eta[static_cast<std::size_t>(m)]);
                q = {hedge[0], hedge[1], hedge[2]};
            }

            touched.clear();
            for (int c = 0; c < 3; ++c) {
                for (const auto& [index, p] : below[static_cast<std::size_t>(c_idx * 3 + c)]) {
                    if (scratch[static_cast<std::size_t>(index)] == 0.0) touched.push_back(index);
                    scratch[static_cast<std::size_t>(index)] += q[static_cast<std::size_t>(c)] * p;
                }
            }
            std::sort(touched.begin(), touched.end());
            auto& out = mixed[static_cast<std::size_t>(c_idx)];
            out.reserve(touched.size());
            for (int index : touched) {
                out.emplace_back(index, scratch[static_cast<std::size_t>(index)]);
                scratch[static_cast<std::size_t>(index)] = 0.0;
            }
        }
        dists_by_level[static_cast<std::size_t>(m)] = std::move(mixed);
    }

    // Root mixture with exploration mass on the smallest action.
    std::vector<double> mixture(static_cast<std::size_t>(action_count), 0.0);
    for (const auto& [index, p] : dists_by_level[0][0])
        mixture[static_cast<std::size_t>(index)] = (1.0 - schedule_.gamma) * p;
    mixture[0] += schedule_.gamma;

    std::vector<double> cdf(mixture.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < mixture.size(); ++i) {
        cum += mixture[i];
        cdf[i] = cum;
    }

    const int played = rng.sample_categorical(mixture);
    feedback.record_play(grid_.value(played), played);

    RoundLossCache cache(grid_, feedback);
    const auto observed = [&cache](int k) { return cache.at(k); };

    // Update activated expert nodes, creating state on first touch.
    width = 1;
    for (int m = 0; m < depth; ++m) {
        const double range_bound = std::pow(2.0, 1 - m);
        const double penalty = schedule_.alpha[static_cast<std::size_t>(m)];
        const std::uint64_t cell = path.cell_index(m + 1);
        auto& level_state = states_[static_cast<std::size_t>(m)];
        const auto& own = dists_by_level[static_cast<std::size_t>(m)];
        const auto& below = dists_by_level[static_cast<std::size_t>(m + 1)];
        for (long c_idx = 0; c_idx < width; ++c_idx) {
            std::vector<int> effective;
            effective.reserve(own[static_cast<std::size_t>(c_idx)].size());
            for (const auto& [index, p] : own[static_cast<std::size_t>(c_idx)]) effective.push_back(index);

            const std::vector<double> estimates = exp4_penalized_estimates(
                observed, effective, cdf, played, range_bound, penalty, schedule_.gamma);

            const std::uint64_t key = node_key(cell, static_cast<std::uint64_t>(c_idx), m);
            auto& cumulative = level_state[key]; // creates zeros on first activation
            for (int c = 0; c < 3; ++c) {
                double dot = 0.0;
                for (const auto& [index, p] : below[static_cast<std::size_t>(c_idx * 3 + c)])
                    dot += p * estimates[static_cast<std::size_t>(index)];
                cumulative[static_cast<std::size_t>(c)] += dot;
            }
        }
        width *= 3;
    }

    RoundResult result;
    result.action_index = played;
    result.action_value = grid_.value(played);
    for (int k = 0; k < action_count; ++k) {
        const double w = mixture[static_cast<std::size_t>(k)];
        if (w > 0.0) result.action_distribution.emplace_back(grid_.value(k), w);
    }
    return result;
}

} // namespace chainbench

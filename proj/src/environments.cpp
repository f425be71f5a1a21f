#include "chainbench/environments.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "chainbench/errors.hpp"

namespace chainbench {

double auction_loss(double reserve, double b1, double b2) {
    if (!(b2 >= 0.0 && b2 <= b1 && b1 <= 1.0))
        throw InvalidBids("auction_loss: need 0 <= b2 <= b1 <= 1");
    if (!(reserve >= 0.0 && reserve <= 1.0))
        throw std::invalid_argument("auction_loss: reserve must be in [0,1]");
    const double revenue = reserve <= b1 ? std::max(reserve, b2) : 0.0;
    return 1.0 - revenue;
}

LossFunction AuctionRound::to_loss() const {
    const double hi = b1;
    const double lo = b2;
    return LossFunction([hi, lo](double y) { return auction_loss(y, hi, lo); },
                        Regularity::SemiLipschitz);
}

EnvironmentKind parse_environment_kind(const std::string& name) {
    if (name == "auction-iid") return EnvironmentKind::AuctionIid;
    if (name == "auction-adversarial") return EnvironmentKind::AuctionAdversarial;
    if (name == "lipschitz-synthetic") return EnvironmentKind::LipschitzSynthetic;
    throw InvalidSpec("unknown environment kind: " + name);
}

const char* to_string(EnvironmentKind kind) {
    switch (kind) {
        case EnvironmentKind::AuctionIid: return "auction-iid";
        case EnvironmentKind::AuctionAdversarial: return "auction-adversarial";
        case EnvironmentKind::LipschitzSynthetic: return "lipschitz-synthetic";
    }
    return "?";
}

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

Context random_context(int dimension, RandomSource& rng) {
    std::vector<double> coords(static_cast<std::size_t>(dimension));
    for (double& c : coords) c = rng.next_unit();
    return Context(coords);
}

// Seeded 1-Lipschitz map [0,1]^d -> [0,1]: a clamped affine function of
// the coordinates whose gradient has sup-norm at most 1, offset by a
// small tent bump. Used as the systematic part of bid sequences.
class LipschitzField {
public:
    LipschitzField(RandomSource& rng, double lo, double hi) : lo_(lo), hi_(hi) {
        base_ = rng.next_in(0.2, 0.8);
        slope_ = rng.next_in(-0.7, 0.7);
        bump_center_ = rng.next_unit();
        bump_weight_ = rng.next_in(-0.3, 0.3);
        // total Lipschitz constant |slope_| + |bump_weight_| <= 1
    }

    double operator()(const Context& x) const {
        double mean = 0.0;
        for (std::size_t j = 0; j < x.dimension(); ++j) mean += x[j];
        mean /= static_cast<double>(x.dimension());
        const double tent = std::max(0.0, 0.5 - std::abs(mean - bump_center_));
        return std::min(hi_, std::max(lo_, base_ + slope_ * mean + bump_weight_ * tent));
    }

private:
    double lo_, hi_;
    double base_, slope_, bump_center_, bump_weight_;
};

std::vector<EnvironmentRound> generate_auction(const EnvironmentSpec& spec, bool adversarial) {
    RandomSource rng = RandomSource(spec.seed).split(0xE57);
    const LipschitzField top_field(rng, 0.05, 1.0);
    const LipschitzField gap_field(rng, 0.0, 1.0);
    const double noise = std::min(1.0, std::max(0.0, spec.bid_noise));

    // Adversarial runs sweep the context space deterministically and flip
    // the bid landscape between epochs; the iid kind draws contexts and
    // noise independently each round.
    const long epoch = std::max<long>(1, spec.horizon / 8);
    const double golden = 0.6180339887498949;

    std::vector<EnvironmentRound> rounds;
    rounds.reserve(static_cast<std::size_t>(spec.horizon));
    for (long t = 0; t < spec.horizon; ++t) {
        RandomSource round_rng = rng.split(static_cast<std::uint64_t>(t));
        Context x = adversarial
                        ? [&] {
                              std::vector<double> coords(static_cast<std::size_t>(spec.dimension));
                              for (int j = 0; j < spec.dimension; ++j) {
                                  const double phase = golden * static_cast<double>(t + 1) +
                                                       0.37 * static_cast<double>(j + 1);
                                  coords[static_cast<std::size_t>(j)] = phase - std::floor(phase);
                              }
                              return Context(coords);
                          }()
                        : random_context(spec.dimension, round_rng);

        double b1 = top_field(x);
        double spread = 0.15 + 0.35 * gap_field(x);
        if (adversarial) {
            // Epoch flips: alternate between tight and wide bid gaps and
            // shift the top bid.
            const long e = t / epoch;
            if (e % 2 == 1) {
                b1 = clamp01(1.0 - 0.6 * b1);
                spread = 0.45 - spread * 0.5;
            }
        }
        b1 = clamp01(b1 + noise * (round_rng.next_unit() - 0.5));
        double b2 = clamp01(b1 * (1.0 - spread) + noise * 0.5 * (round_rng.next_unit() - 0.5));
        if (b2 > b1) std::swap(b1, b2);

        AuctionRound round{std::move(x), b1, b2};
        rounds.push_back({round.context, round.to_loss()});
    }
    return rounds;
}

// One component of the synthetic loss: a tent of unit slope around a
// context-dependent center.
struct Bump {
    double weight;
    double radius;
    LipschitzField center;
};

std::vector<EnvironmentRound> generate_lipschitz(const EnvironmentSpec& spec) {
    if (spec.bump_components < 1 || spec.bump_components > 5)
        throw InvalidSpec("lipschitz-synthetic: bump components must be in 1..5");

    RandomSource rng = RandomSource(spec.seed).split(0x11F5);

    // The first component is a wide valley that makes the loss track a
    // Lipschitz target policy; the rest are minor bumps. Weights are
    // scaled so the total slope in the action is below 1.
    std::vector<Bump> bumps;
    double total_weight = 0.0;
    for (int i = 0; i < spec.bump_components; ++i) {
        Bump b{i == 0 ? -0.55 : rng.next_in(-0.2, 0.2),
               i == 0 ? 1.0 : rng.next_in(0.1, 0.4),
               LipschitzField(rng, 0.0, 1.0)};
        total_weight += std::abs(b.weight);
        bumps.push_back(std::move(b));
    }
    if (total_weight > 0.95) {
        for (Bump& b : bumps) b.weight *= 0.95 / total_weight;
    }

    std::vector<EnvironmentRound> rounds;
    rounds.reserve(static_cast<std::size_t>(spec.horizon));
    const double golden = 0.6180339887498949;
    for (long t = 0; t < spec.horizon; ++t) {
        RandomSource round_rng = rng.split(static_cast<std::uint64_t>(t));
        std::vector<double> coords(static_cast<std::size_t>(spec.dimension));
        for (int j = 0; j < spec.dimension; ++j) {
            const double phase = golden * static_cast<double>(t + 1) + 0.51 * static_cast<double>(j);
            coords[static_cast<std::size_t>(j)] =
                0.5 * (phase - std::floor(phase)) + 0.5 * round_rng.next_unit();
        }
        Context x(coords);

        // Capture the per-round shape by value; the loss must stay a pure
        // closed-form evaluator.
        auto shared = std::make_shared<std::vector<std::pair<double, std::pair<double, double>>>>();
        shared->reserve(bumps.size());
        for (const Bump& b : bumps)
            shared->push_back({b.weight, {b.center(x), b.radius}});

        LossFunction loss(
            [shared](double y) {
                double value = 0.82;
                for (const auto& [weight, cr] : *shared) {
                    const auto& [center, radius] = cr;
                    value += weight * std::max(0.0, radius - std::abs(y - center));
                }
                return clamp01(value);
            },
            Regularity::Lipschitz1);
        rounds.push_back({std::move(x), std::move(loss)});
    }
    return rounds;
}

} // namespace

std::vector<EnvironmentRound> generate_environment(const EnvironmentSpec& spec) {
    if (spec.horizon < 1) throw InvalidSpec("environment: horizon must be >= 1");
    if (spec.dimension < 1) throw InvalidSpec("environment: dimension must be >= 1");

    switch (spec.kind) {
        case EnvironmentKind::AuctionIid: return generate_auction(spec, false);
        case EnvironmentKind::AuctionAdversarial: return generate_auction(spec, true);
        case EnvironmentKind::LipschitzSynthetic: return generate_lipschitz(spec);
    }
    throw InvalidSpec("environment: unknown kind");
}

} // namespace chainbench

#pragma once

#include <string>
#include <vector>

#include "chainbench/context.hpp"
#include "chainbench/loss.hpp"
#include "chainbench/rng.hpp"

namespace chainbench {

// Seller's loss in a second-price auction with reserve price y and top
// bids b1 >= b2: 1 - max{y, b2} * 1{y <= b1}. Exactly 1 - b2 for y <= b2,
// 1 - y for b2 < y <= b1, and 1 above b1. Semi-Lipschitz but not
// continuous at b1.
double auction_loss(double reserve, double b1, double b2);

// One auction round: context plus the two top bids.
struct AuctionRound {
    Context context;
    double b1 = 0.0;
    double b2 = 0.0;

    LossFunction to_loss() const;
};

enum class EnvironmentKind { AuctionIid, AuctionAdversarial, LipschitzSynthetic };

EnvironmentKind parse_environment_kind(const std::string& name);
const char* to_string(EnvironmentKind kind);

// Fully determines an oblivious (x_t, loss_t) sequence given the seed.
struct EnvironmentSpec {
    EnvironmentKind kind = EnvironmentKind::LipschitzSynthetic;
    int dimension = 1;
    long horizon = 0;
    std::uint64_t seed = 1;
    int bump_components = 3;  // lipschitz-synthetic only, <= 5
    double bid_noise = 0.1;   // auction kinds only
};

struct EnvironmentRound {
    Context context;
    LossFunction loss;
};

// Whole sequence for one experiment. Bids in the auction kinds are
// 1-Lipschitz functions of the context perturbed by seeded noise, so a
// Lipschitz reserve-price policy can achieve low loss; the synthetic kind
// mixes up to five seeded 1-Lipschitz bumps rescaled to stay 1-Lipschitz
// with range inside [0,1]. Generation never depends on learner actions.
std::vector<EnvironmentRound> generate_environment(const EnvironmentSpec& spec);

} // namespace chainbench

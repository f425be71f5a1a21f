#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "chainbench/errors.hpp"
#include "chainbench/star.hpp"

using namespace chainbench;

TEST_CASE("dyadic path: halving, boundaries, uniqueness") {
    SUBCASE("d=1 boundary joins the cell whose lower edge it is") {
        const DyadicPath path(Context({0.5}), 2);
        CHECK(path.step(1) == 1); // [1/2, 1]
        CHECK(path.step(2) == 0); // [1/2, 3/4)
    }

    SUBCASE("x = 1 stays inside the last cell") {
        const DyadicPath path(Context({1.0}), 3);
        for (int m = 1; m <= 3; ++m) CHECK(path.step(m) == 1);
    }

    SUBCASE("d=2 interleaves one bit per coordinate") {
        const DyadicPath path(Context({0.75, 0.25}), 1);
        CHECK(path.step(1) == 1); // x-bit 1, y-bit 0
        const DyadicPath other(Context({0.25, 0.75}), 1);
        CHECK(other.step(1) == 2);
    }

    SUBCASE("cell centers refine toward the point") {
        const Context x({0.3, 0.62});
        const DyadicPath path(x, 6);
        for (int m = 1; m <= 6; ++m)
            CHECK(path.cell_center(m).distance_to(x) <= std::pow(2.0, -m - 1) + 1e-12);
    }

    SUBCASE("equal cells at every depth for nearby points in one cell") {
        const DyadicPath a(Context({0.301}), 4);
        const DyadicPath b(Context({0.302}), 4);
        for (int m = 1; m <= 4; ++m) CHECK(a.cell_index(m) == b.cell_index(m));
    }
}

TEST_CASE("wavelet coefficients: trivial fits") {
    SUBCASE("the constant 1/2 needs no corrections") {
        const WaveletCoefficients coeffs =
            wavelet_fit([](const Context&) { return 0.5; }, 1, 4);
        for (int m = 1; m <= 4; ++m)
            for (std::uint64_t cell = 0; cell < (1ull << m); ++cell)
                CHECK(coeffs.coefficient(m, cell) == 0);
        CHECK(coeffs.evaluate(Context({0.77})) == doctest::Approx(0.5));
    }

    SUBCASE("the constant 1 is exactly 1/2 + 1/2") {
        const WaveletCoefficients coeffs = wavelet_fit([](const Context&) { return 1.0; }, 1, 3);
        for (std::uint64_t cell = 0; cell < 2; ++cell) CHECK(coeffs.coefficient(1, cell) == 1);
        for (int m = 2; m <= 3; ++m)
            for (std::uint64_t cell = 0; cell < (1ull << m); ++cell)
                CHECK(coeffs.coefficient(m, cell) == 0);
    }

    SUBCASE("a two-valued first level evaluates as a step") {
        WaveletCoefficients coeffs(1, 1);
        coeffs.set_coefficient(1, 0, -1);
        coeffs.set_coefficient(1, 1, 1);
        CHECK(coeffs.evaluate(Context({0.2})) == doctest::Approx(0.0));
        CHECK(coeffs.evaluate(Context({0.5})) == doctest::Approx(1.0)); // boundary goes right
        CHECK(coeffs.evaluate(Context({0.9})) == doctest::Approx(1.0));
    }
}

TEST_CASE("wavelet fit meets the 2^-M bound for the identity map") {
    for (int depth = 1; depth <= 6; ++depth) {
        const auto identity = [](const Context& x) { return x[0]; };
        const WaveletCoefficients coeffs = wavelet_fit(identity, 1, depth);
        CHECK(wavelet_sup_error(coeffs, identity, 10000) <= std::pow(2.0, -depth) + 1e-12);
    }
}

TEST_CASE("star schedule: exponents, constants, telescoping") {
    SUBCASE("d=2 exploration is T^{-3/8}") {
        const StarSchedule s = star_schedule(4096, 2);
        CHECK(s.gamma == doctest::Approx(std::pow(4096.0, -0.375)));
    }

    SUBCASE("d=1 exploration is T^{-1/2}/ln T") {
        const double t = std::exp(2.0) * 100.0;
        const StarSchedule s = star_schedule(static_cast<long>(t), 1);
        const double rounded = std::floor(t);
        CHECK(s.gamma == doctest::Approx(std::pow(rounded, -0.5) / std::log(rounded)));
    }

    SUBCASE("penalty recursion telescopes to 1e-12") {
        for (long horizon : {16L, 512L, 100000L}) {
            for (int d : {1, 2, 3, 4, 5, 7}) {
                const StarSchedule s = star_schedule(horizon, d);
                CHECK(s.gamma > 0.0);
                CHECK(s.gamma < 1.0);
                for (int m = 1; m <= s.depth; ++m) {
                    const double lhs =
                        s.alpha[static_cast<std::size_t>(m - 1)] - s.alpha[static_cast<std::size_t>(m)];
                    const double rhs =
                        std::pow(2.0, 4 - 2 * m) * s.eta[static_cast<std::size_t>(m)];
                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
                }
                CHECK(s.alpha[static_cast<std::size_t>(s.depth)] == 0.0);
            }
        }
    }

    SUBCASE("rate constant cases") {
        CHECK(star_schedule(1000, 1).rate_constant == doctest::Approx(std::pow(2.0, -1.25) / std::sqrt(2.0)));
        const StarSchedule s3 = star_schedule(1000, 3);
        CHECK(s3.rate_constant ==
              doctest::Approx(std::pow(2.0, -1.25) / std::sqrt(static_cast<double>(s3.depth))));
        CHECK(star_schedule(1000, 6).rate_constant == doctest::Approx(std::pow(2.0, 6.0 / 4.0 - 3.0)));
    }

    SUBCASE("horizons below 3 are rejected") {
        CHECK_THROWS_AS(star_schedule(2, 1), InvalidHorizon);
    }
}

TEST_CASE("star structural accounting") {
    for (int d : {1, 2, 3}) {
        for (int depth : {1, 2, 3, 4}) {
            long expected = 0;
            long pow3 = 1;
            for (int m = 0; m < depth; ++m) {
                long pow2 = 1;
                for (int i = 0; i < d * (m + 1); ++i) pow2 *= 2;
                expected += pow3 * pow2;
                pow3 *= 3;
            }
            CHECK(star_total_exp4_nodes(d, depth) == expected);

            const Context x(std::vector<double>(static_cast<std::size_t>(d), 0.61));
            const long active_expected = (pow3 - 1) / 2;
            const auto active = star_active_nodes(x, d, depth);
            CHECK(static_cast<long>(active.size()) == active_expected);

            // Same-cell contexts activate identical node sets.
            const Context y(std::vector<double>(static_cast<std::size_t>(d),
                                                0.61 + 0.4 * std::pow(2.0, -depth - 2)));
            const auto other = star_active_nodes(y, d, depth);
            REQUIRE(other.size() == active.size());
            for (std::size_t i = 0; i < active.size(); ++i) {
                CHECK(active[i].level == other[i].level);
                CHECK(active[i].cell == other[i].cell);
                CHECK(active[i].coefficient_path == other[i].coefficient_path);
            }
        }
    }
    CHECK(star_active_nodes(Context({0.5}), 1, 1).size() == 1);
    CHECK(star_active_nodes(Context({0.5}), 1, 3).size() == 13);
}

TEST_CASE("star leaf labels enumerate the action grid exactly") {
    for (int depth : {1, 2, 3, 4}) {
        const int k = 1 << depth;
        std::set<int> seen;
        // All coefficient paths.
        long total = 1;
        for (int m = 0; m < depth; ++m) total *= 3;
        for (long path = 0; path < total; ++path) {
            long rest = path;
            int label_times_k = 1 << (depth - 1);
            long divisor = total / 3;
            for (int m = 1; m <= depth; ++m) {
                const int digit = static_cast<int>(rest / divisor);
                rest %= divisor;
                if (divisor > 1) divisor /= 3;
                label_times_k += (digit - 1) * (1 << (depth - m));
            }
            seen.insert(std::clamp(label_times_k, 1, k));
        }
        CHECK(static_cast<int>(seen.size()) == k);
        CHECK(*seen.begin() == 1);
        CHECK(*seen.rbegin() == k);
    }
}

namespace {

LossFunction tent_loss(double center) {
    return LossFunction(
        [center](double y) { return std::min(1.0, 0.1 + std::abs(y - center)); },
        Regularity::Lipschitz1);
}

} // namespace

TEST_CASE("star learner: sampling law, floor, discipline, sparse state") {
    StarSchedule schedule = star_schedule_with(256, 1, 0.1, 3);
    HierExp4Star learner(schedule);
    CHECK(learner.grid().count() == 8);

    GuardedFeedback guard(FeedbackModel::OneSidedFull);
    RandomSource rng(44);
    for (int t = 0; t < 64; ++t) {
        guard.arm(tent_loss(0.6));
        const RoundResult r =
            learner.play_round(Context({rng.next_unit()}), guard, rng.split(static_cast<std::uint64_t>(t)));
        double sum = 0.0;
        double first_mass = 0.0;
        for (const auto& [value, p] : r.action_distribution) {
            CHECK(p >= 0.0);
            sum += p;
            if (value == learner.grid().value(0)) first_mass = p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(first_mass >= schedule.gamma - 1e-12);
    }
    CHECK(guard.violations() == 0);

    // State was created only for activated nodes.
    CHECK(learner.allocated_nodes() > 0);
    CHECK(learner.allocated_nodes() <= static_cast<std::size_t>(star_total_exp4_nodes(1, 3)));

    // All-equal recommendations keep weights uniform: run a fresh learner
    // on a constant loss; every node's three children recommend actions
    // with identical losses only when the loss is flat.
    HierExp4Star flat(star_schedule_with(256, 1, 0.1, 2));
    GuardedFeedback flat_guard(FeedbackModel::OneSidedFull);
    for (int t = 0; t < 10; ++t) {
        flat_guard.arm(LossFunction([](double) { return 0.5; }, Regularity::Lipschitz1));
        const RoundResult r = flat.play_round(Context({0.3}), flat_guard,
                                              rng.split(1000 + static_cast<std::uint64_t>(t)));
        // With a constant loss every leaf is equally good; the mixture
        // stays the uniform-over-labels law with the exploration floor.
        CHECK(r.action_distribution.size() >= 2);
    }
    CHECK(flat_guard.violations() == 0);
}

TEST_CASE("star estimate expectation matches the penalized target") {
    const StarSchedule schedule = star_schedule_with(128, 1, 0.2, 2);
    const ActionGrid grid = make_star_grid(2);
    const LossFunction loss = tent_loss(0.4);

    // A synthetic round state: the mixture any node sees, with floor.
    std::vector<double> mixture{0.2 + 0.3, 0.1, 0.2, 0.2};
    std::vector<double> cdf(mixture.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < mixture.size(); ++i) {
        cum += mixture[i];
        cdf[i] = cum;
    }
    std::vector<double> loss_at(static_cast<std::size_t>(grid.count()));
    for (int k = 0; k < grid.count(); ++k) loss_at[static_cast<std::size_t>(k)] = loss(grid.value(k));
    const auto observed = [&loss_at](int k) { return loss_at[static_cast<std::size_t>(k)]; };

    const std::vector<int> support{0, 2, 3};
    const int anchor = 3;
    const int level = 1;
    const double range_bound = std::pow(2.0, 1 - level);
    const double alpha = schedule.alpha[static_cast<std::size_t>(level)];

    for (int j : support) {
        double expectation = 0.0;
        for (int played = 0; played < grid.count(); ++played) {
            const std::vector<double> est = exp4_penalized_estimates(
                observed, support, cdf, played, range_bound, alpha, schedule.gamma);
            expectation += mixture[static_cast<std::size_t>(played)] * est[static_cast<std::size_t>(j)];
        }
        const double target = loss_at[static_cast<std::size_t>(j)] -
                              loss_at[static_cast<std::size_t>(anchor)] + range_bound -
                              alpha / cdf[static_cast<std::size_t>(j)] + alpha / schedule.gamma;
        CHECK(expectation == doctest::Approx(target).epsilon(1e-10));
    }
}

TEST_CASE("star per-node loss spread bound for Lipschitz losses") {
    // Leaves under an expert node at half-depth m+1/2 share the first m
    // coefficients, so their labels differ by at most 2^{1-m}; with a
    // 1-Lipschitz loss so do their losses.
    const int depth = 4;
    const LossFunction loss = tent_loss(0.35);
    const ActionGrid grid = make_star_grid(depth);

    long total = 1;
    for (int m = 0; m < depth; ++m) total *= 3;

    const auto leaf_index = [&](long path) {
        long rest = path;
        int label_times_k = 1 << (depth - 1);
        long divisor = total / 3;
        for (int m = 1; m <= depth; ++m) {
            const int digit = static_cast<int>(rest / divisor);
            rest %= divisor;
            if (divisor > 1) divisor /= 3;
            label_times_k += (digit - 1) * (1 << (depth - m));
        }
        return std::clamp(label_times_k, 1, 1 << depth) - 1;
    };

    for (int m = 0; m < depth; ++m) {
        long prefix_count = 1;
        for (int i = 0; i < m; ++i) prefix_count *= 3;
        const long suffix_count = total / prefix_count;
        const double bound = std::pow(2.0, 1 - m);
        for (long prefix = 0; prefix < prefix_count; ++prefix) {
            double lo = 2.0;
            double hi = -2.0;
            for (long suffix = 0; suffix < suffix_count; ++suffix) {
                const double v = loss(grid.value(leaf_index(prefix * suffix_count + suffix)));
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            CHECK(hi - lo <= bound + 1e-12);
        }
    }
}

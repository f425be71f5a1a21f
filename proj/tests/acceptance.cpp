// Acceptance suite: runs every graduation criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exits nonzero
// if any criterion fails. argv[1] is the path to the chainbench CLI
// binary (used by the byte-determinism criterion).

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "chainbench/comparators.hpp"
#include "chainbench/covering_tree.hpp"
#include "chainbench/dictionary.hpp"
#include "chainbench/dyadic.hpp"
#include "chainbench/environments.hpp"
#include "chainbench/experts.hpp"
#include "chainbench/flat.hpp"
#include "chainbench/harness.hpp"
#include "chainbench/hier_learners.hpp"
#include "chainbench/star.hpp"

using namespace chainbench;

namespace {

struct Outcome {
    int number;
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<Outcome> g_outcomes;
std::int64_t g_total_violations = 0;

void record(int number, const std::string& name, bool passed, const std::string& detail) {
    g_outcomes.push_back({number, name, passed, detail});
}

void run_criterion(int number, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        const auto [passed, detail] = body();
        record(number, name, passed, detail);
    } catch (const std::exception& e) {
        record(number, name, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", v);
    return buffer;
}

struct MeanWithError {
    double mean = 0.0;
    double standard_error = 0.0;
};

MeanWithError summarize(const std::vector<double>& values) {
    MeanWithError out;
    const double n = static_cast<double>(values.size());
    for (double v : values) out.mean += v;
    out.mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.standard_error = n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
    return out;
}

// Runs `replicates` independent copies of a learner on a fixed
// environment and returns per-replicate expected-loss regrets against
// the supplied comparator value.
std::vector<double> replicate_regrets(const std::vector<EnvironmentRound>& rounds,
                                      const std::function<std::unique_ptr<OnlineLearner>()>& fresh,
                                      double comparator_total,
                                      int replicates,
                                      std::uint64_t seed) {
    std::vector<double> regrets;
    regrets.reserve(static_cast<std::size_t>(replicates));
    for (int r = 0; r < replicates; ++r) {
        std::unique_ptr<OnlineLearner> learner = fresh();
        GuardedFeedback guard(learner->feedback_model());
        RandomSource rng = RandomSource(seed).split(0xACC, static_cast<std::uint64_t>(r));
        double expected_total = 0.0;
        for (std::size_t t = 0; t < rounds.size(); ++t) {
            guard.arm(rounds[t].loss);
            const RoundResult played =
                learner->play_round(rounds[t].context, guard, rng.split(static_cast<std::uint64_t>(t)));
            for (const auto& [value, p] : played.action_distribution)
                expected_total += p * rounds[t].loss(value);
        }
        g_total_violations += guard.violations();
        regrets.push_back(expected_total - comparator_total);
    }
    return regrets;
}

// ---------------------------------------------------------------------
// Criterion 1: Exp3-RTB against its closed-form regret bound.

std::pair<bool, std::string> criterion_exp3rtb_bound() {
    const long horizon = 4096;
    const double gamma = 1.0 / 64.0; // T^{-1/2}
    const int replicates = 50;

    EnvironmentSpec spec;
    spec.kind = EnvironmentKind::AuctionAdversarial;
    spec.dimension = 1;
    spec.horizon = horizon;
    spec.seed = 611;
    const std::vector<EnvironmentRound> rounds = generate_environment(spec);

    // Best fixed action on the learner's own grid.
    const ActionGrid grid = make_rtb_grid(gamma);
    double comparator = 1e18;
    for (int k = 0; k < grid.count(); ++k) {
        double total = 0.0;
        for (const EnvironmentRound& r : rounds) total += r.loss(grid.value(k));
        comparator = std::min(comparator, total);
    }

    struct Bare : OnlineLearner {
        explicit Bare(double g) : state(g) {}
        Exp3Rtb state;
        FeedbackModel feedback_model() const override { return FeedbackModel::OneSidedFull; }
        RoundResult play_round(const Context&, GuardedFeedback& guard, RandomSource rng) override {
            const std::vector<double> q = state.sampling_distribution();
            const int played = state.round(guard, rng);
            RoundResult out;
            out.action_index = played;
            out.action_value = state.grid().value(played);
            for (int k = 0; k < state.grid().count(); ++k)
                out.action_distribution.emplace_back(state.grid().value(k), q[static_cast<std::size_t>(k)]);
            return out;
        }
    };

    const std::vector<double> regrets = replicate_regrets(
        rounds, [&] { return std::make_unique<Bare>(gamma); }, comparator, replicates, 52701);
    const MeanWithError stat = summarize(regrets);

    const double t = static_cast<double>(horizon);
    const double bound = gamma * t * (2.0 + 0.25 * std::log(std::exp(1.0) / gamma)) +
                         2.0 * std::log(std::ceil(1.0 / gamma)) / gamma;
    const double limit = bound + 3.0 * stat.standard_error;
    return {stat.mean <= limit,
            "mean regret " + fmt(stat.mean) + " vs bound " + fmt(bound) + " + 3se (" +
                fmt(3.0 * stat.standard_error) + ")"};
}

// ---------------------------------------------------------------------
// Criterion 2: estimator unbiasedness by exact enumeration.

std::pair<bool, std::string> criterion_unbiasedness() {
    RandomSource rng(0xBEEF);
    const int states = 200;
    double worst = 0.0;

    for (int s = 0; s < states; ++s) {
        RandomSource state_rng = rng.split(static_cast<std::uint64_t>(s));
        const int k = 2 + static_cast<int>(state_rng.next_below(30));
        const double gamma = state_rng.next_in(0.04, 0.4);

        std::vector<double> p(static_cast<std::size_t>(k));
        double z = 0.0;
        for (double& v : p) {
            v = std::exp(state_rng.next_in(-2.0, 2.0));
            z += v;
        }
        for (double& v : p) v = (1.0 - gamma) * v / z;
        p[0] += gamma;

        std::vector<double> cdf(p.size());
        double cum = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            cum += p[i];
            cdf[i] = cum;
        }
        cdf.back() = 1.0;

        std::vector<double> losses(static_cast<std::size_t>(k));
        for (double& v : losses) v = state_rng.next_unit();
        const auto observed = [&losses](int i) { return losses[static_cast<std::size_t>(i)]; };

        // Exp3-RTB estimator target: the true loss itself.
        for (int j = 0; j < k; ++j) {
            double expectation = 0.0;
            for (int played = 0; played <= j; ++played)
                expectation += p[static_cast<std::size_t>(played)] * losses[static_cast<std::size_t>(j)] /
                               cdf[static_cast<std::size_t>(j)];
            worst = std::max(worst, std::abs(expectation - losses[static_cast<std::size_t>(j)]));
        }

        std::vector<int> set;
        for (int i = 0; i < k; ++i)
            if (state_rng.next_unit() < 0.5) set.push_back(i);
        if (set.empty()) set.push_back(k - 1);
        const int anchor = set.back();
        const double range_bound = state_rng.next_in(0.5, 4.0);
        const double alpha = state_rng.next_in(0.0, 0.8);

        for (int j : set) {
            double range_expectation = 0.0;
            double penalized_expectation = 0.0;
            for (int played = 0; played < k; ++played) {
                const std::vector<double> r = exp4_range_estimates(observed, set, cdf, played);
                const std::vector<double> q =
                    exp4_penalized_estimates(observed, set, cdf, played, range_bound, alpha, gamma);
                range_expectation += p[static_cast<std::size_t>(played)] * r[static_cast<std::size_t>(j)];
                penalized_expectation +=
                    p[static_cast<std::size_t>(played)] * q[static_cast<std::size_t>(j)];
            }
            const double base =
                losses[static_cast<std::size_t>(j)] - losses[static_cast<std::size_t>(anchor)];
            worst = std::max(worst, std::abs(range_expectation - base));
            const double penalized_target =
                base + range_bound - alpha / cdf[static_cast<std::size_t>(j)] + alpha / gamma;
            worst = std::max(worst, std::abs(penalized_expectation - penalized_target));
        }
    }
    return {worst <= 1e-10, "max |expectation - target| = " + fmt(worst) + " over 200 states"};
}

// ---------------------------------------------------------------------
// Criterion 3: wavelet approximation bound.

std::pair<bool, std::string> criterion_wavelet() {
    RandomSource rng(0x3A7E);
    int failures = 0;
    double worst_ratio = 0.0;

    for (int trial = 0; trial < 200; ++trial) {
        RandomSource trial_rng = rng.split(static_cast<std::uint64_t>(trial));
        const int d = trial % 2 == 0 ? 1 : 2;
        const int depth = 1 + trial % 6;

        // Random certifiably 1-Lipschitz function: clamped mixture of
        // sup-norm tents with total weight below 1.
        const int pieces = 1 + static_cast<int>(trial_rng.next_below(4));
        std::vector<double> weights(static_cast<std::size_t>(pieces));
        std::vector<double> radii(static_cast<std::size_t>(pieces));
        std::vector<std::vector<double>> centers(static_cast<std::size_t>(pieces));
        double total = 0.0;
        for (int i = 0; i < pieces; ++i) {
            weights[static_cast<std::size_t>(i)] = trial_rng.next_in(-1.0, 1.0);
            radii[static_cast<std::size_t>(i)] = trial_rng.next_in(0.2, 0.9);
            total += std::abs(weights[static_cast<std::size_t>(i)]);
            centers[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(d));
            for (double& c : centers[static_cast<std::size_t>(i)]) c = trial_rng.next_unit();
        }
        const double scale = total > 1.0 ? 1.0 / total : 1.0;
        const double offset = trial_rng.next_unit();
        const auto f = [&, scale, offset](const Context& x) {
            double v = offset;
            for (int i = 0; i < pieces; ++i) {
                double dist = 0.0;
                for (int j = 0; j < d; ++j)
                    dist = std::max(dist, std::abs(x[static_cast<std::size_t>(j)] -
                                                   centers[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
                v += scale * weights[static_cast<std::size_t>(i)] *
                     std::max(0.0, radii[static_cast<std::size_t>(i)] - dist);
            }
            return std::min(1.0, std::max(0.0, v));
        };

        const WaveletCoefficients coeffs = wavelet_fit(f, d, depth);
        const double error = wavelet_sup_error(coeffs, f, 10000);
        const double bound = std::pow(2.0, -depth);
        worst_ratio = std::max(worst_ratio, error / bound);
        if (error > bound + 1e-12) ++failures;
    }
    return {failures == 0,
            std::to_string(failures) + " failures; worst error/bound ratio " + fmt(worst_ratio)};
}

// ---------------------------------------------------------------------
// Criterion 4: covering-tree leaf spread.

std::pair<bool, std::string> criterion_tree_geometry() {
    const FunctionDictionary dictionary = make_canonical_dictionary_d1();
    double worst = 0.0;
    for (int depth = 1; depth <= 5; ++depth) {
        const CoveringTree tree(dictionary, depth);
        for (int m = 0; m < depth; ++m) worst = std::max(worst, tree.leaf_spread_ratio(m));
    }
    return {worst <= 1.0 + 1e-12,
            "worst spread/bound ratio " + fmt(worst) + " over depths 1..5 (" +
                std::to_string(dictionary.size()) + " dictionary members)"};
}

// ---------------------------------------------------------------------
// Criterion 6: Hedge second-order regret inequality.

std::pair<bool, std::string> criterion_hedge_inequality() {
    RandomSource rng(0x4E57);
    int failures = 0;
    for (int instance = 0; instance < 500; ++instance) {
        RandomSource inst_rng = rng.split(static_cast<std::uint64_t>(instance));
        const int n = 2 + static_cast<int>(inst_rng.next_below(7));     // N <= 8
        const int horizon = 1 + static_cast<int>(inst_rng.next_below(64)); // T <= 64

        std::vector<double> rates(static_cast<std::size_t>(horizon));
        double current = inst_rng.next_in(0.1, 3.0);
        for (double& r : rates) {
            current *= inst_rng.next_in(0.8, 1.0);
            r = current;
        }

        std::vector<double> cumulative(static_cast<std::size_t>(n), 0.0);
        double hedge_loss = 0.0;
        double second_order = 0.0;
        for (int t = 0; t < horizon; ++t) {
            const std::vector<double> p =
                hedge_distribution(cumulative, rates[static_cast<std::size_t>(t)]);
            for (int i = 0; i < n; ++i) {
                const double loss = 2.5 * inst_rng.next_unit(); // nonnegative
                hedge_loss += p[static_cast<std::size_t>(i)] * loss;
                second_order +=
                    rates[static_cast<std::size_t>(t)] * p[static_cast<std::size_t>(i)] * loss * loss;
                cumulative[static_cast<std::size_t>(i)] += loss;
            }
        }
        double best = cumulative[0];
        for (double v : cumulative) best = std::min(best, v);
        const double bound = std::log(static_cast<double>(n)) / rates.back() + 0.5 * second_order;
        if (hedge_loss - best > bound + 1e-9) ++failures;
    }
    return {failures == 0, std::to_string(failures) + " violations in 500 instances"};
}

// ---------------------------------------------------------------------
// Criteria 7 and 5 partly: feedback ordering on a fixed Lipschitz
// environment, with every learner passing through a guard.

std::pair<bool, std::string> criterion_feedback_ordering() {
    const long horizon = 4096;
    const int replicates = 30;

    EnvironmentSpec spec;
    spec.kind = EnvironmentKind::LipschitzSynthetic;
    spec.dimension = 1;
    spec.horizon = horizon;
    spec.seed = 70117;
    spec.bump_components = 3;
    const std::vector<EnvironmentRound> rounds = generate_environment(spec);
    const ComparatorResult comparator = lipschitz_comparator(rounds, 128);

    auto tree_exp4 = std::make_shared<const CoveringTree>(
        make_canonical_dictionary_d1(), HierExp4::depth_for_gamma(HierExp4::default_gamma(horizon, 1)));
    const double hedge_eps = HierHedge::default_epsilon(horizon, 1);
    auto tree_hedge = std::make_shared<const CoveringTree>(make_canonical_dictionary_d1(),
                                                           HierHedge::depth_for_epsilon(hedge_eps));

    const MeanWithError hedge = summarize(replicate_regrets(
        rounds,
        [&] { return std::make_unique<HierHedge>(tree_hedge, make_endpoint_cover_grid(hedge_eps)); },
        comparator.total, replicates, 1411));
    const MeanWithError exp4 = summarize(replicate_regrets(
        rounds,
        [&] { return std::make_unique<HierExp4>(tree_exp4, HierExp4::default_gamma(horizon, 1)); },
        comparator.total, replicates, 1412));
    const MeanWithError exp3 = summarize(replicate_regrets(
        rounds,
        [&] {
            return std::make_unique<ContextualExp3>(ContextualExp3::default_epsilon(horizon, 1), 1,
                                                    horizon);
        },
        comparator.total, replicates, 1413));

    const double gap_hi = exp3.mean - exp4.mean;
    const double gap_hi_se = std::sqrt(exp3.standard_error * exp3.standard_error +
                                       exp4.standard_error * exp4.standard_error);
    const double gap_lo = exp4.mean - hedge.mean;
    const double gap_lo_se = std::sqrt(exp4.standard_error * exp4.standard_error +
                                       hedge.standard_error * hedge.standard_error);

    const bool ok = gap_hi >= -gap_hi_se && gap_lo >= -gap_lo_se;
    return {ok, "mean regrets: hier-hedge " + fmt(hedge.mean) + " <= hier-exp4 " + fmt(exp4.mean) +
                    " <= contextual-exp3 " + fmt(exp3.mean) + " (gaps " + fmt(gap_lo) + " +- " +
                    fmt(gap_lo_se) + ", " + fmt(gap_hi) + " +- " + fmt(gap_hi_se) + ")"};
}

// ---------------------------------------------------------------------
// Criterion 8: regret-slope diagnostic for ContextualRTB.

std::pair<bool, std::string> criterion_regret_slope() {
    const std::vector<long> horizons{1 << 10, 1 << 12, 1 << 14};
    const int replicates = 8;

    std::vector<double> log_t;
    std::vector<double> log_regret;
    for (long horizon : horizons) {
        EnvironmentSpec spec;
        spec.kind = EnvironmentKind::AuctionAdversarial;
        spec.dimension = 1;
        spec.horizon = horizon;
        spec.seed = 8899;
        const std::vector<EnvironmentRound> rounds = generate_environment(spec);
        const ComparatorResult comparator = lipschitz_comparator(rounds, 128);

        const double eps = ContextualRtb::default_epsilon(horizon, 1);
        const MeanWithError stat = summarize(replicate_regrets(
            rounds, [&] { return std::make_unique<ContextualRtb>(eps, eps); }, comparator.total,
            replicates, 33000 + static_cast<std::uint64_t>(horizon)));
        log_t.push_back(std::log(static_cast<double>(horizon)));
        log_regret.push_back(std::log(std::max(stat.mean, 1e-6)));
    }

    // Least-squares slope.
    const double n = static_cast<double>(log_t.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
        mean_x += log_t[i];
        mean_y += log_regret[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
        sxy += (log_t[i] - mean_x) * (log_regret[i] - mean_y);
        sxx += (log_t[i] - mean_x) * (log_t[i] - mean_x);
    }
    const double slope = sxy / sxx;
    const double limit = 2.0 / 3.0 + 0.1;
    return {slope <= limit, "log-log slope " + fmt(slope) + " vs limit " + fmt(limit)};
}

// ---------------------------------------------------------------------
// Criterion 9: dyadic-tree structural accounting.

std::pair<bool, std::string> criterion_star_accounting() {
    for (int d = 1; d <= 3; ++d) {
        for (int depth = 1; depth <= 4; ++depth) {
            long expected_total = 0;
            long pow3 = 1;
            for (int m = 0; m < depth; ++m) {
                long pow2 = 1;
                for (int i = 0; i < d * (m + 1); ++i) pow2 *= 2;
                expected_total += pow3 * pow2;
                pow3 *= 3;
            }
            if (star_total_exp4_nodes(d, depth) != expected_total)
                return {false, "total nodes mismatch at d=" + std::to_string(d) +
                                   " M=" + std::to_string(depth)};

            const Context x(std::vector<double>(static_cast<std::size_t>(d), 0.317));
            const long expected_active = (pow3 - 1) / 2;
            if (static_cast<long>(star_active_nodes(x, d, depth).size()) != expected_active)
                return {false, "active nodes mismatch at d=" + std::to_string(d) +
                                   " M=" + std::to_string(depth)};
        }
    }
    return {true, "totals and per-round activations exact for d in 1..3, M in 1..4"};
}

// ---------------------------------------------------------------------
// Criterion 10: schedule identities.

std::pair<bool, std::string> criterion_schedule_identities() {
    double worst = 0.0;
    for (long horizon : {3L, 64L, 1024L, 4096L, 100000L}) {
        for (int d : {1, 2, 3, 4, 5, 8}) {
            const StarSchedule s = star_schedule(horizon, d);
            for (int m = 1; m <= s.depth; ++m) {
                const double lhs =
                    s.alpha[static_cast<std::size_t>(m - 1)] - s.alpha[static_cast<std::size_t>(m)];
                const double rhs = std::pow(2.0, 4 - 2 * m) * s.eta[static_cast<std::size_t>(m)];
                const double scale = std::max(1.0, std::abs(rhs));
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
            }
        }
    }
    return {worst <= 1e-12, "worst relative identity error " + fmt(worst)};
}

// ---------------------------------------------------------------------
// Criterion 11: byte-identical CLI reruns.

std::pair<bool, std::string> criterion_cli_determinism(const std::string& cli_path) {
    if (cli_path.empty()) return {false, "no CLI path supplied"};

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "chainbench_acceptance";
    fs::create_directories(dir);
    const fs::path config_path = dir / "determinism.cfg";
    const fs::path out_a = dir / "a.csv";
    const fs::path out_b = dir / "b.csv";

    {
        std::ofstream config(config_path);
        config << "algorithm = contextual-rtb\n"
               << "kind = auction-iid\n"
               << "d = 1\n"
               << "T = 256\n"
               << "seed = 17\n"
               << "replicates = 3\n"
               << "resolution = 32\n";
    }

    const auto invoke = [&](const fs::path& out) {
        const std::string command =
            "\"" + cli_path + "\" run --config \"" + config_path.string() + "\" --out \"" +
            out.string() + "\" > /dev/null";
        return std::system(command.c_str());
    };
    if (invoke(out_a) != 0) return {false, "first CLI run failed"};
    if (invoke(out_b) != 0) return {false, "second CLI run failed"};

    const auto read = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    const std::string a = read(out_a);
    const std::string b = read(out_b);
    if (a.empty()) return {false, "empty CSV"};
    return {a == b, "two runs, " + std::to_string(a.size()) + " bytes each"};
}

// ---------------------------------------------------------------------
// Criterion 5: feedback discipline across the whole suite. Also runs the
// algorithms not covered by the statistical criteria so that every
// learner and feedback model contributes guarded rounds.

std::pair<bool, std::string> criterion_feedback_discipline() {
    // Exercise hier-exp4-star and the harness path end to end.
    for (AlgorithmName algorithm : {AlgorithmName::HierExp4Star, AlgorithmName::ContextualExp3,
                                    AlgorithmName::HierHedge}) {
        ExperimentConfig config;
        config.algorithm = algorithm;
        config.environment.kind = EnvironmentKind::LipschitzSynthetic;
        config.environment.dimension = 1;
        config.horizon = 96;
        config.replicates = 2;
        config.seed = 5150;
        config.comparator = ComparatorClass::Lipschitz1;
        config.comparator_resolution = 32;
        const ExperimentResult result = run_experiment(config);
        g_total_violations += result.feedback_violations;
    }
    return {g_total_violations == 0,
            "total violations across the suite: " + std::to_string(g_total_violations)};
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";

    run_criterion(1, "exp3-rtb regret within the closed-form bound", criterion_exp3rtb_bound);
    run_criterion(2, "estimator unbiasedness to 1e-10", criterion_unbiasedness);
    run_criterion(3, "wavelet approximation within 2^-M", criterion_wavelet);
    run_criterion(4, "covering-tree leaf spread within 2^{-m+2}", criterion_tree_geometry);
    run_criterion(6, "hedge second-order inequality, 500 instances", criterion_hedge_inequality);
    run_criterion(7, "feedback ordering: hier-hedge <= hier-exp4 <= contextual-exp3",
                  criterion_feedback_ordering);
    run_criterion(8, "contextual-rtb regret slope", criterion_regret_slope);
    run_criterion(9, "dyadic tree structural accounting", criterion_star_accounting);
    run_criterion(10, "schedule penalty recursion identities", criterion_schedule_identities);
    run_criterion(11, "byte-identical CLI reruns",
                  [&] { return criterion_cli_determinism(cli_path); });
    // Last: tallies the violations the other criteria accumulated.
    run_criterion(5, "feedback discipline: zero violations", criterion_feedback_discipline);

    std::sort(g_outcomes.begin(), g_outcomes.end(),
              [](const Outcome& a, const Outcome& b) { return a.number < b.number; });

    int failures = 0;
    for (const Outcome& outcome : g_outcomes) {
        if (!outcome.passed) ++failures;
        std::printf("[%s] criterion %d: %s -- %s\n", outcome.passed ? "PASS" : "FAIL",
                    outcome.number, outcome.name.c_str(), outcome.detail.c_str());
    }
    if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}

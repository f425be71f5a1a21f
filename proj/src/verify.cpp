#include "chainbench/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "chainbench/comparators.hpp"
#include "chainbench/dictionary.hpp"
#include "chainbench/dyadic.hpp"
#include "chainbench/environments.hpp"
#include "chainbench/experts.hpp"
#include "chainbench/harness.hpp"
#include "chainbench/hier_learners.hpp"
#include "chainbench/star.hpp"

namespace chainbench {

namespace {

struct Checker {
    std::vector<CheckResult> results;

    void check(const std::string& name, bool passed, const std::string& detail = "") {
        results.push_back({name, passed, detail});
    }
};

void check_hedge(Checker& c) {
    const std::vector<double> losses{0.0, 1.0};
    const std::vector<double> p = hedge_distribution(losses, std::log(2.0));
    c.check("hedge: exp(-ln 2) halves the weight",
            std::abs(p[0] - 2.0 / 3.0) < 1e-12 && std::abs(p[1] - 1.0 / 3.0) < 1e-12);

    const std::vector<double> huge{5.0, 5.0, 5.0 + 1e6};
    const std::vector<double> q = hedge_distribution(huge, 1.0);
    c.check("hedge: max-shift keeps weights finite",
            std::isfinite(q[0]) && std::abs(q[0] - 0.5) < 1e-12 && q[2] == 0.0);
}

void check_categorical_frequencies(Checker& c) {
    const std::vector<double> p{0.15, 0.0, 0.35, 0.5};
    RandomSource rng(20240901);
    const int draws = 100000;
    std::vector<int> counts(p.size(), 0);
    for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(rng.sample_categorical(p))];

    bool ok = counts[1] == 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0.0) continue;
        const double se = std::sqrt(p[k] * (1.0 - p[k]) * draws);
        if (std::abs(counts[k] - p[k] * draws) > 4.0 * se) ok = false;
    }
    c.check("rng: categorical frequencies within 4 standard errors", ok);
}

void check_estimator_unbiasedness(Checker& c) {
    RandomSource rng(77);
    const int states = 30;
    bool rtb_ok = true;
    bool range_ok = true;
    bool penalized_ok = true;

    for (int s = 0; s < states && (rtb_ok || range_ok || penalized_ok); ++s) {
        RandomSource state_rng = rng.split(static_cast<std::uint64_t>(s));
        const int k = 3 + static_cast<int>(state_rng.next_below(10));
        const double gamma = state_rng.next_in(0.05, 0.4);

        std::vector<double> p(static_cast<std::size_t>(k));
        double z = 0.0;
        for (double& v : p) {
            v = std::exp(state_rng.next_in(-1.5, 1.5));
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

        std::vector<double> loss(static_cast<std::size_t>(k));
        for (double& v : loss) v = state_rng.next_unit();
        const auto observed = [&loss](int i) { return loss[static_cast<std::size_t>(i)]; };

        // Exp3-RTB estimator: played-and-above importance weighting.
        for (int j = 0; j < k; ++j) {
            double expectation = 0.0;
            for (int played = 0; played < k; ++played) {
                if (played <= j) expectation += p[static_cast<std::size_t>(played)] * loss[static_cast<std::size_t>(j)] /
                                                cdf[static_cast<std::size_t>(j)];
            }
            if (std::abs(expectation - loss[static_cast<std::size_t>(j)]) > 1e-10) rtb_ok = false;
        }

        std::vector<int> effective;
        for (int i = 0; i < k; ++i)
            if (state_rng.next_unit() < 0.5) effective.push_back(i);
        if (effective.empty()) effective.push_back(k - 1);
        const int anchor = effective.back();

        for (int j : effective) {
            double range_expectation = 0.0;
            double penalized_expectation = 0.0;
            const double range_bound = 2.0;
            const double alpha = state_rng.next_in(0.0, 0.5);
            for (int played = 0; played < k; ++played) {
                const std::vector<double> est =
                    exp4_range_estimates(observed, effective, cdf, played);
                range_expectation += p[static_cast<std::size_t>(played)] * est[static_cast<std::size_t>(j)];
                const std::vector<double> pen = exp4_penalized_estimates(
                    observed, effective, cdf, played, range_bound, alpha, gamma);
                penalized_expectation += p[static_cast<std::size_t>(played)] * pen[static_cast<std::size_t>(j)];
            }
            const double range_target = loss[static_cast<std::size_t>(j)] - loss[static_cast<std::size_t>(anchor)];
            if (std::abs(range_expectation - range_target) > 1e-10) range_ok = false;
            const double penalized_target = range_target + range_bound -
                                            alpha / cdf[static_cast<std::size_t>(j)] + alpha / gamma;
            if (std::abs(penalized_expectation - penalized_target) > 1e-10) penalized_ok = false;
        }
    }
    c.check("estimators: one-sided importance weighting is unbiased", rtb_ok);
    c.check("estimators: anchored range estimate matches its target", range_ok);
    c.check("estimators: penalized estimate matches its target", penalized_ok);
}

void check_star_schedule(Checker& c) {
    bool identity_ok = true;
    bool gamma_ok = true;
    for (long t : {64L, 1024L, 65536L}) {
        for (int d : {1, 2, 3, 5}) {
            const StarSchedule s = star_schedule(t, d);
            for (int m = 1; m <= s.depth; ++m) {
                const double lhs = s.alpha[static_cast<std::size_t>(m - 1)] - s.alpha[static_cast<std::size_t>(m)];
                const double rhs = std::pow(2.0, 4 - 2 * m) * s.eta[static_cast<std::size_t>(m)];
                if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(rhs))) identity_ok = false;
            }
            if (d == 2 && std::abs(s.gamma - std::pow(static_cast<double>(t), -0.375)) > 1e-12)
                gamma_ok = false;
        }
    }
    c.check("schedule: penalty recursion telescopes exactly", identity_ok);
    c.check("schedule: d=2 exploration is T^(-3/8)", gamma_ok);
}

void check_star_structure(Checker& c) {
    bool ok = true;
    for (int d : {1, 2}) {
        for (int depth : {1, 2, 3}) {
            long expected_total = 0;
            for (int m = 0; m < depth; ++m)
                expected_total += static_cast<long>(std::pow(3.0, m) * std::pow(2.0, d * (m + 1)));
            if (star_total_exp4_nodes(d, depth) != expected_total) ok = false;

            const Context x(std::vector<double>(static_cast<std::size_t>(d), 0.37));
            const long expected_active = (static_cast<long>(std::pow(3.0, depth)) - 1) / 2;
            if (static_cast<long>(star_active_nodes(x, d, depth).size()) != expected_active) ok = false;
        }
    }
    c.check("dyadic tree: node accounting matches the closed forms", ok);
}

void check_wavelet(Checker& c) {
    RandomSource rng(5150);
    bool ok = true;
    for (int trial = 0; trial < 10 && ok; ++trial) {
        RandomSource trial_rng = rng.split(static_cast<std::uint64_t>(trial));
        const double a = trial_rng.next_in(-1.0, 1.0);
        const double b = trial_rng.next_unit();
        const double offset = trial_rng.next_unit();
        const auto f = [a, b, offset](const Context& x) {
            const double v = offset + a * (x[0] - 0.5) + (1.0 - std::abs(a)) * std::max(0.0, 0.3 - std::abs(x[0] - b));
            return std::min(1.0, std::max(0.0, v));
        };
        const int depth = 1 + trial % 5;
        const WaveletCoefficients coeffs = wavelet_fit(f, 1, depth);
        if (wavelet_sup_error(coeffs, f, 2000) > std::pow(2.0, -depth) + 1e-12) ok = false;
    }
    c.check("wavelet: fitted approximation meets the 2^-M bound", ok);
}

void check_covering_tree(Checker& c) {
    const FunctionDictionary dictionary = make_canonical_dictionary_d1();
    bool ok = dictionary.max_lipschitz_violation() <= 1e-12;
    for (int depth : {1, 2, 3}) {
        const CoveringTree tree(dictionary, depth);
        for (int m = 0; m < depth; ++m)
            if (tree.leaf_spread_ratio(m) > 1.0 + 1e-12) ok = false;
    }
    c.check("covering tree: leaf spread within 2^{-m+2} at every level", ok);
}

void check_auction(Checker& c) {
    const bool closed_form = std::abs(auction_loss(0.2, 0.7, 0.5) - 0.5) < 1e-15 &&
                             std::abs(auction_loss(0.6, 0.7, 0.5) - 0.4) < 1e-15 &&
                             auction_loss(0.75, 0.7, 0.5) == 1.0;
    c.check("auction: three-piece closed form", closed_form);

    EnvironmentSpec spec;
    spec.kind = EnvironmentKind::AuctionAdversarial;
    spec.dimension = 1;
    spec.horizon = 32;
    spec.seed = 9;
    bool semi = true;
    for (const EnvironmentRound& round : generate_environment(spec))
        if (!verify_regularity(round.loss, 200, kRegularityTolerance)) semi = false;
    c.check("auction: generated losses pass the semi-Lipschitz grid check", semi);
}

void check_probability_vectors_and_guards(Checker& c) {
    bool prob_ok = true;
    bool guard_ok = true;
    std::ostringstream detail;

    for (AlgorithmName algorithm :
         {AlgorithmName::Exp3Rtb, AlgorithmName::ContextualExp3, AlgorithmName::ContextualRtb,
          AlgorithmName::HierExp4, AlgorithmName::HierExp4Star, AlgorithmName::HierHedge}) {
        ExperimentConfig config;
        config.algorithm = algorithm;
        config.environment.kind = algorithm == AlgorithmName::HierHedge ||
                                          algorithm == AlgorithmName::HierExp4 ||
                                          algorithm == AlgorithmName::HierExp4Star
                                      ? EnvironmentKind::LipschitzSynthetic
                                      : EnvironmentKind::AuctionIid;
        config.environment.dimension = 1;
        config.horizon = 24;
        config.replicates = 1;
        config.seed = 31;
        config.comparator = ComparatorClass::BestGridConstant;
        config.comparator_resolution = 16;

        const EnvironmentSpec env_spec = [&] {
            EnvironmentSpec s = config.environment;
            s.horizon = config.horizon;
            return s;
        }();
        const std::vector<EnvironmentRound> rounds = generate_environment(env_spec);
        std::unique_ptr<OnlineLearner> learner = make_learner(config);
        GuardedFeedback guard(learner->feedback_model());
        RandomSource rng(11);
        for (std::size_t t = 0; t < rounds.size(); ++t) {
            guard.arm(rounds[t].loss);
            const RoundResult r = learner->play_round(rounds[t].context, guard, rng.split(t));
            std::vector<double> probs;
            probs.reserve(r.action_distribution.size());
            for (const auto& [value, p] : r.action_distribution) probs.push_back(p);
            if (!is_probability_vector(probs)) {
                prob_ok = false;
                detail << to_string(algorithm) << " round " << t << " not a distribution; ";
            }
        }
        if (guard.violations() != 0) {
            guard_ok = false;
            detail << to_string(algorithm) << " violated feedback; ";
        }
    }
    c.check("learners: every sampling law is a probability vector", prob_ok, detail.str());
    c.check("learners: feedback discipline holds on smoke runs", guard_ok, detail.str());
}

void check_comparators(Checker& c) {
    EnvironmentSpec spec;
    spec.kind = EnvironmentKind::LipschitzSynthetic;
    spec.dimension = 1;
    spec.horizon = 48;
    spec.seed = 3;
    const std::vector<EnvironmentRound> rounds = generate_environment(spec);

    const ComparatorResult constant = best_grid_constant(rounds, 32);
    const ComparatorResult lipschitz = lipschitz_comparator(rounds, 32);
    c.check("comparator: Lipschitz class is at least as good as constants",
            lipschitz.total <= constant.total + 1e-9);

    double prefix = 0.0;
    bool prefix_ok = true;
    for (std::size_t t = 0; t < rounds.size(); ++t) {
        prefix += lipschitz.per_round[t];
    }
    prefix_ok = std::abs(prefix - lipschitz.total) < 1e-9;
    c.check("comparator: per-round losses sum to the optimum", prefix_ok);
}

void check_csv_determinism(Checker& c) {
    ExperimentConfig config;
    config.algorithm = AlgorithmName::Exp3Rtb;
    config.environment.kind = EnvironmentKind::AuctionAdversarial;
    config.environment.dimension = 1;
    config.horizon = 40;
    config.replicates = 2;
    config.seed = 12;
    config.comparator = ComparatorClass::BestGridConstant;
    config.comparator_resolution = 16;

    std::ostringstream first;
    emit_csv(run_experiment(config), first);
    std::ostringstream second;
    emit_csv(run_experiment(config), second);
    c.check("harness: identical config and seed give byte-identical CSV",
            first.str() == second.str());

    bool identity_ok = true;
    const ExperimentResult result = run_experiment(config);
    for (const RegretTrace& trace : result.traces) {
        const double regret = trace.final_regret();
        const double recomposed = regret + trace.comparator_total;
        if (std::abs(recomposed - trace.cumulative_loss.back()) > 1e-9) identity_ok = false;
    }
    c.check("harness: regret + comparator recomposes the cumulative loss", identity_ok);
}

} // namespace

std::vector<CheckResult> run_verification() {
    Checker checker;
    check_hedge(checker);
    check_categorical_frequencies(checker);
    check_estimator_unbiasedness(checker);
    check_star_schedule(checker);
    check_star_structure(checker);
    check_wavelet(checker);
    check_covering_tree(checker);
    check_auction(checker);
    check_probability_vectors_and_guards(checker);
    check_comparators(checker);
    check_csv_determinism(checker);
    return checker.results;
}

} // namespace chainbench

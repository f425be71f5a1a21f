#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chainbench/comparators.hpp"
#include "chainbench/environments.hpp"
#include "chainbench/learner.hpp"

namespace chainbench {

enum class AlgorithmName {
    ContextualExp3,
    ContextualRtb,
    Exp3Rtb,
    HierExp4,
    HierExp4Star,
    HierHedge,
};

AlgorithmName parse_algorithm_name(const std::string& name);
const char* to_string(AlgorithmName name);

// One experiment: an algorithm, an environment, and how to measure it.
// Unset tuning parameters are derived from T and d by the per-algorithm
// default tuners.
struct ExperimentConfig {
    AlgorithmName algorithm = AlgorithmName::Exp3Rtb;
    EnvironmentSpec environment;
    long horizon = 0;
    int replicates = 1;
    std::uint64_t seed = 1;

    std::optional<double> gamma;
    std::optional<double> epsilon;
    std::optional<int> depth; // tree depth override (M)

    std::optional<ComparatorClass> comparator;
    int comparator_resolution = 64;

    void validate() const;
    ComparatorClass effective_comparator() const;
};

// Flat key = value text. Keys: algorithm, kind, d, T, seed, replicates,
// gamma, epsilon, M, comparator, resolution, bumps, bid_noise. Lines
// starting with '#' are comments. Unknown keys are config errors.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
void apply_config_override(ExperimentConfig& config, const std::string& key, const std::string& value);
std::string config_to_text(const ExperimentConfig& config);

// Per-round record of one replicate.
struct RegretTrace {
    std::vector<double> realized_loss;
    std::vector<double> expected_loss; // sampling law dotted with the true loss
    std::vector<double> action_value;
    std::vector<double> cumulative_loss;      // realized
    std::vector<double> comparator_cumulative; // prefix losses of the comparator minimizer
    double comparator_total = 0.0;

    double final_regret() const { return cumulative_loss.back() - comparator_total; }
    double final_expected_regret() const;
};

struct ExperimentResult {
    ExperimentConfig config;
    ComparatorResult comparator;
    std::vector<RegretTrace> traces; // one per replicate
    std::int64_t feedback_queries = 0;
    std::int64_t feedback_violations = 0;
};

// Builds the environment from the config seed, runs every replicate
// (replicate r draws its learner randomness from the (seed, r) split)
// with feedback-model enforcement, and measures against the comparator
// computed once for the environment. Replicates run on worker threads;
// results are deterministic regardless of scheduling. A feedback
// violation fails the run.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Fresh learner for one replicate of this configuration.
std::unique_ptr<OnlineLearner> make_learner(const ExperimentConfig& config);

// Header `t,replicate,loss,cum_loss,comparator_cum,regret`, one row per
// (round, replicate), 12 significant digits, LF line endings. Byte-stable
// across reruns of the same config.
void emit_csv(const ExperimentResult& result, std::ostream& out);
void emit_csv_file(const ExperimentResult& result, const std::string& path);

} // namespace chainbench

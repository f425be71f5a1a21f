#include "chainbench/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "chainbench/errors.hpp"
#include "chainbench/flat.hpp"
#include "chainbench/hier_learners.hpp"
#include "chainbench/star.hpp"

namespace chainbench {

namespace {

constexpr std::uint64_t kEnvironmentStream = 0xE77;
constexpr std::uint64_t kLearnerStream = 0x1EA2;

// The covering tree over the canonical dictionary does not depend on the
// experiment, so instances are shared across replicates and runs.
std::shared_ptr<const CoveringTree> canonical_tree(int depth) {
    static std::mutex mutex;
    static const FunctionDictionary dictionary = make_canonical_dictionary_d1();
    static std::map<int, std::shared_ptr<const CoveringTree>> cache;

    const std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[depth];
    if (!slot) slot = std::make_shared<const CoveringTree>(dictionary, depth);
    return slot;
}

struct ReplicateOutput {
    RegretTrace trace;
    std::int64_t queries = 0;
    std::int64_t violations = 0;
};

ReplicateOutput run_replicate(const ExperimentConfig& config,
                              const std::vector<EnvironmentRound>& rounds,
                              const ComparatorResult& comparator,
                              int replicate) {
    std::unique_ptr<OnlineLearner> learner = make_learner(config);
    GuardedFeedback guard(learner->feedback_model());
    RandomSource rng = RandomSource(config.seed).split(kLearnerStream, static_cast<std::uint64_t>(replicate));

    ReplicateOutput out;
    RegretTrace& trace = out.trace;
    const std::size_t horizon = rounds.size();
    trace.realized_loss.reserve(horizon);
    trace.expected_loss.reserve(horizon);
    trace.action_value.reserve(horizon);
    trace.cumulative_loss.reserve(horizon);
    trace.comparator_cumulative.reserve(horizon);
    trace.comparator_total = comparator.total;

    double cumulative = 0.0;
    double comparator_cumulative = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) {
        guard.arm(rounds[t].loss);
        const RoundResult played =
            learner->play_round(rounds[t].context, guard, rng.split(static_cast<std::uint64_t>(t)));

        const double realized = rounds[t].loss(played.action_value);
        double expected = 0.0;
        for (const auto& [value, p] : played.action_distribution) expected += p * rounds[t].loss(value);

        cumulative += realized;
        comparator_cumulative += comparator.per_round[t];
        trace.realized_loss.push_back(realized);
        trace.expected_loss.push_back(expected);
        trace.action_value.push_back(played.action_value);
        trace.cumulative_loss.push_back(cumulative);
        trace.comparator_cumulative.push_back(comparator_cumulative);
    }
    out.queries = guard.queries();
    out.violations = guard.violations();
    return out;
}

} // namespace

double RegretTrace::final_expected_regret() const {
    double total = 0.0;
    for (double v : expected_loss) total += v;
    return total - comparator_total;
}

std::unique_ptr<OnlineLearner> make_learner(const ExperimentConfig& config) {
    const long horizon = config.horizon;
    const int dimension = config.environment.dimension;

    switch (config.algorithm) {
        case AlgorithmName::ContextualExp3: {
            const double eps =
                config.epsilon ? *config.epsilon : ContextualExp3::default_epsilon(horizon, dimension);
            return std::make_unique<ContextualExp3>(eps, dimension, horizon);
        }
        case AlgorithmName::ContextualRtb: {
            const double eps =
                config.epsilon ? *config.epsilon : ContextualRtb::default_epsilon(horizon, dimension);
            const double gamma = config.gamma ? *config.gamma : eps;
            return std::make_unique<ContextualRtb>(eps, gamma);
        }
        case AlgorithmName::Exp3Rtb: {
            const double gamma =
                config.gamma ? *config.gamma : std::pow(static_cast<double>(horizon), -0.5);
            // One ungrouped instance: a single ball covering everything.
            class BareExp3Rtb : public OnlineLearner {
            public:
                explicit BareExp3Rtb(double g) : state_(g) {}
                FeedbackModel feedback_model() const override { return FeedbackModel::OneSidedFull; }
                RoundResult play_round(const Context&, GuardedFeedback& feedback,
                                       RandomSource rng) override {
                    const std::vector<double> q = state_.sampling_distribution();
                    const int played = state_.round(feedback, rng);
                    RoundResult result;
                    result.action_index = played;
                    result.action_value = state_.grid().value(played);
                    for (int k = 0; k < state_.grid().count(); ++k)
                        result.action_distribution.emplace_back(state_.grid().value(k),
                                                                q[static_cast<std::size_t>(k)]);
                    return result;
                }

            private:
                Exp3Rtb state_;
            };
            return std::make_unique<BareExp3Rtb>(gamma);
        }
        case AlgorithmName::HierExp4: {
            const double gamma =
                config.gamma ? *config.gamma : HierExp4::default_gamma(horizon, dimension);
            const int depth = config.depth ? *config.depth : HierExp4::depth_for_gamma(gamma);
            return std::make_unique<HierExp4>(canonical_tree(depth), gamma);
        }
        case AlgorithmName::HierExp4Star: {
            StarSchedule schedule = star_schedule(horizon, dimension);
            if (config.gamma || config.depth) {
                const double gamma = config.gamma ? *config.gamma : schedule.gamma;
                const int depth =
                    config.depth ? *config.depth
                                 : std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / gamma) - 1e-9)));
                schedule = star_schedule_with(horizon, dimension, gamma, depth);
            }
            return std::make_unique<HierExp4Star>(std::move(schedule));
        }
        case AlgorithmName::HierHedge: {
            const double eps =
                config.epsilon ? *config.epsilon : HierHedge::default_epsilon(horizon, dimension);
            const int depth = config.depth ? *config.depth : HierHedge::depth_for_epsilon(eps);
            return std::make_unique<HierHedge>(canonical_tree(depth), make_endpoint_cover_grid(eps));
        }
    }
    throw ConfigError("unknown algorithm");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();

    EnvironmentSpec env_spec = config.environment;
    env_spec.horizon = config.horizon;
    env_spec.seed = RandomSource(config.seed).split(kEnvironmentStream).next_u64();
    const std::vector<EnvironmentRound> rounds = generate_environment(env_spec);

    ExperimentResult result;
    result.config = config;
    result.comparator =
        comparator_value(rounds, config.effective_comparator(), config.comparator_resolution);

    std::vector<ReplicateOutput> outputs(static_cast<std::size_t>(config.replicates));
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    const int workers = std::max(1, std::min<int>(config.replicates,
                                                  static_cast<int>(std::thread::hardware_concurrency())));
    auto worker = [&] {
        while (true) {
            const int r = next.fetch_add(1);
            if (r >= config.replicates || failed.load()) return;
            try {
                outputs[static_cast<std::size_t>(r)] = run_replicate(config, rounds, result.comparator, r);
            } catch (const std::exception& e) {
                failed.store(true);
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (failure.empty()) failure = e.what();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error("replicate failed: " + failure);

    for (ReplicateOutput& out : outputs) {
        result.feedback_queries += out.queries;
        result.feedback_violations += out.violations;
        result.traces.push_back(std::move(out.trace));
    }
    if (result.feedback_violations != 0)
        throw ForbiddenQuery("run recorded " + std::to_string(result.feedback_violations) +
                             " feedback violations");
    return result;
}

namespace {

void format_value(std::string& row, double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    row += buffer;
}

} // namespace

void emit_csv(const ExperimentResult& result, std::ostream& out) {
    out << "t,replicate,loss,cum_loss,comparator_cum,regret\n";
    std::string row;
    for (std::size_t r = 0; r < result.traces.size(); ++r) {
        const RegretTrace& trace = result.traces[r];
        for (std::size_t t = 0; t < trace.realized_loss.size(); ++t) {
            row.clear();
            row += std::to_string(t + 1);
            row += ',';
            row += std::to_string(r);
            row += ',';
            format_value(row, trace.realized_loss[t]);
            row += ',';
            format_value(row, trace.cumulative_loss[t]);
            row += ',';
            format_value(row, trace.comparator_cumulative[t]);
            row += ',';
            format_value(row, trace.cumulative_loss[t] - trace.comparator_cumulative[t]);
            row += '\n';
            out << row;
        }
    }
}

void emit_csv_file(const ExperimentResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary); // LF endings everywhere
    if (!out) throw IoError("cannot open for writing: " + path);
    emit_csv(result, out);
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

} // namespace chainbench

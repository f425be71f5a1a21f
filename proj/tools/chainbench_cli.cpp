// chainbench: run and sweep regret experiments, or verify the library's
// invariants. Talks to the library exclusively through the C interface.
//
//   chainbench run --config exp.cfg --out trace.csv [--seed N] [--replicates N]
//   chainbench sweep --config exp.cfg --horizons 1024,4096,16384 --out dir/
//   chainbench verify
//
// Exit codes: 0 success, 1 config error, 2 property failure, 3 IO error.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chainbench.h"

namespace {

int exit_code_for(cb_status status) {
    switch (status) {
        case CB_OK: return 0;
        case CB_ERROR_CONFIG: return 1;
        case CB_ERROR_INVALID: return 1;
        case CB_ERROR_PROPERTY: return 2;
        case CB_ERROR_IO: return 3;
        case CB_ERROR_RUNTIME: return 2;
    }
    return 2;
}

int report(cb_status status) {
    if (status != CB_OK)
        std::fprintf(stderr, "chainbench: %s: %s\n", cb_status_name(status), cb_last_error());
    return exit_code_for(status);
}

std::vector<long> parse_horizons(const std::string& csv, bool& ok) {
    std::vector<long> horizons;
    ok = true;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string token = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (token.empty()) {
            ok = false;
            return horizons;
        }
        try {
            std::size_t pos = 0;
            horizons.push_back(std::stol(token, &pos));
            if (pos != token.size()) ok = false;
        } catch (...) {
            ok = false;
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (horizons.empty()) ok = false;
    return horizons;
}

struct ConfigHandle {
    cb_config* ptr = nullptr;
    ~ConfigHandle() { cb_config_destroy(ptr); }
};

struct ResultHandle {
    cb_result* ptr = nullptr;
    ~ResultHandle() { cb_result_destroy(ptr); }
};

int run_command(const std::string& config_path, const std::string& out_path, long seed, int replicates) {
    ConfigHandle config;
    cb_status status = cb_config_load(config_path.c_str(), &config.ptr);
    if (status != CB_OK) return report(status);

    if (seed >= 0) {
        status = cb_config_set(config.ptr, "seed", std::to_string(seed).c_str());
        if (status != CB_OK) return report(status);
    }
    if (replicates > 0) {
        status = cb_config_set(config.ptr, "replicates", std::to_string(replicates).c_str());
        if (status != CB_OK) return report(status);
    }

    ResultHandle result;
    status = cb_run(config.ptr, &result.ptr);
    if (status != CB_OK) return report(status);

    status = cb_result_write_csv(result.ptr, out_path.c_str());
    if (status != CB_OK) return report(status);

    int64_t rounds = 0;
    int reps = 0;
    double comparator = 0.0;
    cb_result_rounds(result.ptr, &rounds);
    cb_result_replicates(result.ptr, &reps);
    cb_result_comparator_total(result.ptr, &comparator);
    double mean_regret = 0.0;
    for (int r = 0; r < reps; ++r) {
        double regret = 0.0;
        cb_result_final_regret(result.ptr, r, &regret);
        mean_regret += regret;
    }
    mean_regret /= reps > 0 ? reps : 1;
    std::printf("wrote %s: T=%" PRId64 " replicates=%d comparator=%.6g mean final regret=%.6g\n",
                out_path.c_str(), rounds, reps, comparator, mean_regret);
    return 0;
}

int sweep_command(const std::string& config_path, const std::string& horizons_csv,
                  const std::string& out_dir, long seed, int replicates) {
    bool ok = false;
    const std::vector<long> horizons = parse_horizons(horizons_csv, ok);
    if (!ok) {
        std::fprintf(stderr, "chainbench: bad --horizons list: %s\n", horizons_csv.c_str());
        return 1;
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::fprintf(stderr, "chainbench: cannot create %s: %s\n", out_dir.c_str(), ec.message().c_str());
        return 3;
    }

    for (long horizon : horizons) {
        ConfigHandle config;
        cb_status status = cb_config_load(config_path.c_str(), &config.ptr);
        if (status != CB_OK) return report(status);
        status = cb_config_set(config.ptr, "T", std::to_string(horizon).c_str());
        if (status != CB_OK) return report(status);
        if (seed >= 0) {
            status = cb_config_set(config.ptr, "seed", std::to_string(seed).c_str());
            if (status != CB_OK) return report(status);
        }
        if (replicates > 0) {
            status = cb_config_set(config.ptr, "replicates", std::to_string(replicates).c_str());
            if (status != CB_OK) return report(status);
        }

        ResultHandle result;
        status = cb_run(config.ptr, &result.ptr);
        if (status != CB_OK) return report(status);

        const std::string out_path =
            (std::filesystem::path(out_dir) / ("T" + std::to_string(horizon) + ".csv")).string();
        status = cb_result_write_csv(result.ptr, out_path.c_str());
        if (status != CB_OK) return report(status);
        std::printf("wrote %s\n", out_path.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"contextual online-learning regret benchmark"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string horizons;
    long seed = -1;
    int replicates = -1;

    CLI::App* run = app.add_subcommand("run", "run one experiment and write a CSV trace");
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--out", out_path, "output CSV path")->required();
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--replicates", replicates, "override the replicate count");

    CLI::App* sweep = app.add_subcommand("sweep", "run one experiment per horizon, one CSV each");
    sweep->add_option("--config", config_path, "experiment config file")->required();
    sweep->add_option("--horizons", horizons, "comma-separated horizon list")->required();
    sweep->add_option("--out", out_path, "output directory")->required();
    sweep->add_option("--seed", seed, "override the config seed");
    sweep->add_option("--replicates", replicates, "override the replicate count");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant and property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (run->parsed()) return run_command(config_path, out_path, seed, replicates);
    if (sweep->parsed()) return sweep_command(config_path, horizons, out_path, seed, replicates);
    if (verify->parsed()) {
        int failures = 0;
        const cb_status status = cb_verify(/*verbose=*/1, &failures);
        if (status == CB_OK) {
            std::printf("all checks passed\n");
            return 0;
        }
        return report(status);
    }
    return 1;
}

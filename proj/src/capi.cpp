#define CHAINBENCH_BUILD

#include "chainbench.h"

#include <cstdio>
#include <cstring>
#include <string>

#include "chainbench/errors.hpp"
#include "chainbench/harness.hpp"
#include "chainbench/verify.hpp"

using namespace chainbench;

struct cb_config {
    ExperimentConfig config;
};

struct cb_result {
    ExperimentResult result;
};

namespace {

thread_local std::string g_last_error;

cb_status fail(cb_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Maps a thrown exception onto the exit-code-compatible status set.
cb_status current_exception_status() {
    try {
        throw;
    } catch (const ConfigError& e) {
        return fail(CB_ERROR_CONFIG, e.what());
    } catch (const InvalidSpec& e) {
        return fail(CB_ERROR_CONFIG, e.what());
    } catch (const IoError& e) {
        return fail(CB_ERROR_IO, e.what());
    } catch (const ForbiddenQuery& e) {
        return fail(CB_ERROR_PROPERTY, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(CB_ERROR_CONFIG, e.what());
    } catch (const std::exception& e) {
        return fail(CB_ERROR_RUNTIME, e.what());
    } catch (...) {
        return fail(CB_ERROR_RUNTIME, "unknown error");
    }
}

} // namespace

extern "C" {

const char* cb_status_name(cb_status status) {
    switch (status) {
        case CB_OK: return "ok";
        case CB_ERROR_CONFIG: return "config-error";
        case CB_ERROR_PROPERTY: return "property-failure";
        case CB_ERROR_IO: return "io-error";
        case CB_ERROR_INVALID: return "invalid-argument";
        case CB_ERROR_RUNTIME: return "runtime-error";
    }
    return "?";
}

const char* cb_last_error(void) { return g_last_error.c_str(); }

cb_status cb_config_load(const char* path, cb_config** out) {
    if (path == nullptr || out == nullptr) return fail(CB_ERROR_INVALID, "null argument");
    try {
        *out = new cb_config{load_config_file(path)};
        return CB_OK;
    } catch (...) {
        return current_exception_status();
    }
}

cb_status cb_config_parse(const char* text, cb_config** out) {
    if (text == nullptr || out == nullptr) return fail(CB_ERROR_INVALID, "null argument");
    try {
        *out = new cb_config{parse_config_text(text)};
        return CB_OK;
    } catch (...) {
        return current_exception_status();
    }
}

cb_status cb_config_set(cb_config* config, const char* key, const char* value) {
    if (config == nullptr || key == nullptr || value == nullptr)
        return fail(CB_ERROR_INVALID, "null argument");
    try {
        apply_config_override(config->config, key, value);
        config->config.validate();
        return CB_OK;
    } catch (...) {
        return current_exception_status();
    }
}

cb_status cb_config_text(const cb_config* config, char* buf, size_t buflen, size_t* len) {
    if (config == nullptr || buf == nullptr || buflen == 0) return fail(CB_ERROR_INVALID, "null argument");
    try {
        const std::string text = config_to_text(config->config);
        if (len != nullptr) *len = text.size();
        std::snprintf(buf, buflen, "%s", text.c_str());
        return CB_OK;
    } catch (...) {
        return current_exception_status();
    }
}

void cb_config_destroy(cb_config* config) { delete config; }

cb_status cb_run(const cb_config* config, cb_result** out) {
    if (config == nullptr || out == nullptr) return fail(CB_ERROR_INVALID, "null argument");
    try {
        *out = new cb_result{run_experiment(config->config)};
        return CB_OK;
    } catch (...) {
        return current_exception_status();
    }
}

cb_status cb_result_rounds(const cb_result* result, int64_t* out) {
    if (result == nullptr || out == nullptr) return fail(CB_ERROR_INVALID, "null argument");
    *out = result->result.config.horizon;
    return CB_OK;
}

cb_status cb_result_replicates(const cb_result* result, int* out) {
    if (result == nullptr || out == nullptr) return fail(CB_ERROR_INVALID, "null argument");
    *out = static_cast<int>(result->result.traces.size());
    return CB_OK;
}

cb_status cb_result_comparator_total(const cb_result* result, double* out) {
    if (result == nullptr || out == nullptr) return fail(CB_ERROR_INVALID, "null argument");
    *out = result->result.comparator.total;
    return CB_OK;
}

cb_status cb_result_final_regret(const cb_result* result, int replicate, double* out) {
    if (result == nullptr || out == nullptr) return fail(CB_ERROR_INVALID, "null argument");
    if (replicate < 0 || replicate >= static_cast<int>(result->result.traces.size()))
        return fail(CB_ERROR_INVALID, "replicate out of range");
    *out = result->result.traces[static_cast<std::size_t>(replicate)].final_regret();
    return CB_OK;
}

cb_status cb_result_final_expected_regret(const cb_result* result, int replicate, double* out) {
    if (result == nullptr || out == nullptr) return fail(CB_ERROR_INVALID, "null argument");
    if (replicate < 0 || replicate >= static_cast<int>(result->result.traces.size()))
        return fail(CB_ERROR_INVALID, "replicate out of range");
    *out = result->result.traces[static_cast<std::size_t>(replicate)].final_expected_regret();
    return CB_OK;
}

cb_status cb_result_write_csv(const cb_result* result, const char* path) {
    if (result == nullptr || path == nullptr) return fail(CB_ERROR_INVALID, "null argument");
    try {
        emit_csv_file(result->result, path);
        return CB_OK;
    } catch (...) {
        return current_exception_status();
    }
}

void cb_result_destroy(cb_result* result) { delete result; }

cb_status cb_verify(int verbose, int* failures) {
    try {
        const std::vector<CheckResult> checks = run_verification();
        int failed = 0;
        for (const CheckResult& check : checks) {
            if (!check.passed) ++failed;
            if (verbose != 0) {
                std::printf("[%s] %s%s%s\n", check.passed ? "PASS" : "FAIL", check.name.c_str(),
                            check.detail.empty() ? "" : " -- ", check.detail.c_str());
            }
        }
        if (failures != nullptr) *failures = failed;
        if (failed != 0) return fail(CB_ERROR_PROPERTY, std::to_string(failed) + " checks failed");
        return CB_OK;
    } catch (...) {
        return current_exception_status();
    }
}

} // extern "C"

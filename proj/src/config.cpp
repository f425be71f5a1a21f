#include <cctype>
#include <fstream>
#include <sstream>

#include "chainbench/errors.hpp"
#include "chainbench/harness.hpp"

namespace chainbench {

AlgorithmName parse_algorithm_name(const std::string& name) {
    if (name == "contextual-exp3") return AlgorithmName::ContextualExp3;
    if (name == "contextual-rtb") return AlgorithmName::ContextualRtb;
    if (name == "exp3-rtb") return AlgorithmName::Exp3Rtb;
    if (name == "hier-exp4") return AlgorithmName::HierExp4;
    if (name == "hier-exp4-star") return AlgorithmName::HierExp4Star;
    if (name == "hier-hedge") return AlgorithmName::HierHedge;
    throw ConfigError("unknown algorithm: " + name);
}

const char* to_string(AlgorithmName name) {
    switch (name) {
        case AlgorithmName::ContextualExp3: return "contextual-exp3";
        case AlgorithmName::ContextualRtb: return "contextual-rtb";
        case AlgorithmName::Exp3Rtb: return "exp3-rtb";
        case AlgorithmName::HierExp4: return "hier-exp4";
        case AlgorithmName::HierExp4Star: return "hier-exp4-star";
        case AlgorithmName::HierHedge: return "hier-hedge";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (horizon < 1) throw ConfigError("T must be >= 1");
    if (algorithm == AlgorithmName::HierExp4Star && horizon < 3)
        throw ConfigError("hier-exp4-star needs T >= 3");
    if (replicates < 1) throw ConfigError("replicates must be >= 1");
    if (environment.dimension < 1) throw ConfigError("d must be >= 1");
    if ((algorithm == AlgorithmName::HierExp4 || algorithm == AlgorithmName::HierHedge) &&
        environment.dimension != 1)
        throw ConfigError("hier-exp4 and hier-hedge ship with the d=1 policy dictionary only");
    if (gamma && !(*gamma > 0.0 && *gamma < 1.0)) throw ConfigError("gamma must be in (0,1)");
    if (epsilon && !(*epsilon > 0.0 && *epsilon <= 1.0)) throw ConfigError("epsilon must be in (0,1]");
    if (depth && *depth < 0) throw ConfigError("M must be >= 0");
    if (comparator_resolution < 1) throw ConfigError("resolution must be >= 1");
}

ComparatorClass ExperimentConfig::effective_comparator() const {
    if (comparator) return *comparator;
    return environment.dimension == 1 ? ComparatorClass::Lipschitz1 : ComparatorClass::BestGridConstant;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw ConfigError("");
        return v;
    } catch (...) {
        throw ConfigError("bad integer for " + key + ": '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw ConfigError("");
        return v;
    } catch (...) {
        throw ConfigError("bad number for " + key + ": '" + value + "'");
    }
}

} // namespace

void apply_config_override(ExperimentConfig& config, const std::string& key, const std::string& value) {
    if (key == "algorithm") {
        config.algorithm = parse_algorithm_name(value);
    } else if (key == "kind") {
        config.environment.kind = parse_environment_kind(value);
    } else if (key == "d") {
        config.environment.dimension = static_cast<int>(parse_long(key, value));
    } else if (key == "T") {
        config.horizon = parse_long(key, value);
        config.environment.horizon = config.horizon;
    } else if (key == "seed") {
        config.seed = static_cast<std::uint64_t>(parse_long(key, value));
        config.environment.seed = config.seed;
    } else if (key == "replicates") {
        config.replicates = static_cast<int>(parse_long(key, value));
    } else if (key == "gamma") {
        config.gamma = parse_double(key, value);
    } else if (key == "epsilon") {
        config.epsilon = parse_double(key, value);
    } else if (key == "M") {
        config.depth = static_cast<int>(parse_long(key, value));
    } else if (key == "comparator") {
        if (value == "lipschitz")
            config.comparator = ComparatorClass::Lipschitz1;
        else if (value == "best-constant")
            config.comparator = ComparatorClass::BestGridConstant;
        else
            throw ConfigError("comparator must be 'lipschitz' or 'best-constant', got '" + value + "'");
    } else if (key == "resolution") {
        config.comparator_resolution = static_cast<int>(parse_long(key, value));
    } else if (key == "bumps") {
        config.environment.bump_components = static_cast<int>(parse_long(key, value));
    } else if (key == "bid_noise") {
        config.environment.bid_noise = parse_double(key, value);
    } else {
        throw ConfigError("unknown config key: " + key);
    }
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig config;
    bool saw_algorithm = false;
    bool saw_kind = false;
    bool saw_horizon = false;

    std::istringstream in(text);
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_number) + ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_number) + ": empty key or value");
        apply_config_override(config, key, value);
        if (key == "algorithm") saw_algorithm = true;
        if (key == "kind") saw_kind = true;
        if (key == "T") saw_horizon = true;
    }
    if (!saw_algorithm) throw ConfigError("missing required key: algorithm");
    if (!saw_kind) throw ConfigError("missing required key: kind");
    if (!saw_horizon) throw ConfigError("missing required key: T");
    config.validate();
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string config_to_text(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "algorithm = " << to_string(config.algorithm) << '\n';
    out << "kind = " << to_string(config.environment.kind) << '\n';
    out << "d = " << config.environment.dimension << '\n';
    out << "T = " << config.horizon << '\n';
    out << "seed = " << config.seed << '\n';
    out << "replicates = " << config.replicates << '\n';
    if (config.gamma) out << "gamma = " << *config.gamma << '\n';
    if (config.epsilon) out << "epsilon = " << *config.epsilon << '\n';
    if (config.depth) out << "M = " << *config.depth << '\n';
    if (config.comparator)
        out << "comparator = "
            << (*config.comparator == ComparatorClass::Lipschitz1 ? "lipschitz" : "best-constant") << '\n';
    out << "resolution = " << config.comparator_resolution << '\n';
    if (config.environment.kind == EnvironmentKind::LipschitzSynthetic)
        out << "bumps = " << config.environment.bump_components << '\n';
    else
        out << "bid_noise = " << config.environment.bid_noise << '\n';
    return out.str();
}

} // namespace chainbench

#pragma once

// JSON experiment configuration. Kept out of simulate.hpp so only the CLI
// and the config tests pay for the JSON parser.
//
// Schema (all keys optional unless noted):
//   n: [int, ...]                 required
//   m: [int, ...]                 required
//   beta: [number, ...]           exactly one of beta /
//   sqrt_beta_log_n: [number, ...]   sqrt_beta_log_n is required
//   p: number                     default log^2(n)/n
//   alpha: number                 default edge-unbiased per trial
//   trials: int                   default 10
//   seed: unsigned int            default 1
//   workers: int                  default 0 (hardware threads)
//   pipeline: {
//     cleanup: bool               default true
//     seeds: bool                 default false
//     cleanup_iterations: int     default 0 (ceil(log2 n))
//     cleanup_max_draws: int      default 0 (20 m)
//     threshold: number | "auto"  default 0.5
//     seed_degree_quantile: number  default 0.9
//     seed_distance_cutoff: number  default 0.1
//   }

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "netrecover/errors.hpp"
#include "netrecover/simulate.hpp"

namespace netrecover {

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, const std::vector<std::string>& known,
                                const std::string& where) {
    for (const auto& [key, unused] : j.items()) {
        (void)unused;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("config: unknown key \"" + key + "\" in " + where);
    }
}

} // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
        detail::reject_unknown_keys(j,
                                    {"n", "m", "beta", "sqrt_beta_log_n", "p", "alpha", "trials",
                                     "seed", "workers", "pipeline"},
                                    "top level");
        ExperimentConfig config;
        if (!j.contains("n") || !j.contains("m"))
            throw std::invalid_argument("config: keys \"n\" and \"m\" are required");
        config.n_values = j.at("n").get<std::vector<int>>();
        config.m_values = j.at("m").get<std::vector<int>>();
        if (j.contains("beta")) config.beta_values = j.at("beta").get<std::vector<double>>();
        if (j.contains("sqrt_beta_log_n"))
            config.sqrt_beta_log_n_values = j.at("sqrt_beta_log_n").get<std::vector<double>>();
        if (j.contains("p")) config.p = j.at("p").get<double>();
        if (j.contains("alpha")) config.alpha = j.at("alpha").get<double>();
        if (j.contains("trials")) config.trials = j.at("trials").get<int>();
        if (j.contains("seed")) config.base_seed = RngSeed{j.at("seed").get<std::uint64_t>()};
        if (j.contains("workers")) config.workers = j.at("workers").get<int>();
        if (j.contains("pipeline")) {
            const nlohmann::json& p = j.at("pipeline");
            if (!p.is_object())
                throw std::invalid_argument("config: \"pipeline\" must be an object");
            detail::reject_unknown_keys(p,
                                        {"cleanup", "seeds", "cleanup_iterations",
                                         "cleanup_max_draws", "threshold",
                                         "seed_degree_quantile", "seed_distance_cutoff"},
                                        "\"pipeline\"");
            RecoverOptions& opts = config.pipeline;
            if (p.contains("cleanup")) opts.use_cleanup = p.at("cleanup").get<bool>();
            if (p.contains("seeds")) opts.use_seeds = p.at("seeds").get<bool>();
            if (p.contains("cleanup_iterations"))
                opts.cleanup_iterations = p.at("cleanup_iterations").get<int>();
            if (p.contains("cleanup_max_draws"))
                opts.cleanup_max_draws = p.at("cleanup_max_draws").get<int>();
            if (p.contains("threshold")) {
                const nlohmann::json& w = p.at("threshold");
                if (w.is_string() && w.get<std::string>() == "auto")
                    opts.w.reset();
                else if (w.is_number())
                    opts.w = w.get<double>();
                else
                    throw std::invalid_argument(
                        "config: \"threshold\" must be a number or \"auto\"");
            }
            if (p.contains("seed_degree_quantile"))
                opts.seed_degree_quantile = p.at("seed_degree_quantile").get<double>();
            if (p.contains("seed_distance_cutoff"))
                opts.seed_distance_cutoff = p.at("seed_distance_cutoff").get<double>();
        }
        validate_config(config);
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
}

inline ExperimentConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return config_from_json(j);
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error(path + ": cannot open for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw io_error(path + ": read failed");
    try {
        return parse_config(buffer.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

} // namespace netrecover

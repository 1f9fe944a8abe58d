#pragma once

// Experiment runner: parameter grids over (n, m, beta), deterministic
// per-trial seeding, parallel trial execution, lower-median aggregation,
// and the experiment CSV format.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "netrecover/alignment.hpp"
#include "netrecover/graph.hpp"
#include "netrecover/io.hpp"
#include "netrecover/metrics.hpp"
#include "netrecover/parallel.hpp"
#include "netrecover/recovery.hpp"
#include "netrecover/sampling.hpp"

namespace netrecover {

// Pipeline defaults for simulations: cleanup on, seeds off, fixed 0.5
// threshold (edge-unbiased noise keeps the edge/non-edge clusters on
// opposite sides of one half).
inline RecoverOptions default_sim_pipeline() {
    RecoverOptions opts;
    opts.w = 0.5;
    return opts;
}

struct ExperimentConfig {
    std::vector<int> n_values;
    std::vector<int> m_values;
    // Exactly one of the two grids below must be non-empty. The second is
    // the sqrt(beta) * log(n) axis, inverted to beta = (x / log n)^2 per n.
    std::vector<double> beta_values;
    std::vector<double> sqrt_beta_log_n_values;
    std::optional<double> p;     // absent: p = log^2(n) / n
    std::optional<double> alpha; // absent: alpha from edge unbiasedness per trial
    int trials = 10;
    RngSeed base_seed{1};
    RecoverOptions pipeline = default_sim_pipeline();
    int workers = 0; // 0 selects the hardware thread count
};

inline void validate_config(const ExperimentConfig& config) {
    if (config.n_values.empty()) throw std::invalid_argument("config: no n values");
    if (config.m_values.empty()) throw std::invalid_argument("config: no m values");
    for (int n : config.n_values)
        if (n < 2) throw std::invalid_argument("config: n must be at least 2");
    for (int m : config.m_values)
        if (m < 2) throw std::invalid_argument("config: m must be at least 2");
    const bool have_beta = !config.beta_values.empty();
    const bool have_x = !config.sqrt_beta_log_n_values.empty();
    if (have_beta == have_x)
        throw std::invalid_argument(
            "config: exactly one of the beta and sqrt_beta_log_n grids must be given");
    for (double b : config.beta_values)
        if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("config: beta outside [0,1]");
    for (double x : config.sqrt_beta_log_n_values)
        if (!(x >= 0.0)) throw std::invalid_argument("config: sqrt_beta_log_n must be >= 0");
    if (config.p && !(*config.p >= 0.0 && *config.p <= 1.0))
        throw std::invalid_argument("config: p outside [0,1]");
    if (config.alpha && !(*config.alpha >= 0.0 && *config.alpha <= 1.0))
        throw std::invalid_argument("config: alpha outside [0,1]");
    if (config.trials < 1) throw std::invalid_argument("config: trials must be at least 1");
    if (config.workers < 0) throw std::invalid_argument("config: workers must be >= 0");
    if (config.pipeline.w && !(*config.pipeline.w > 0.0 && *config.pipeline.w < 1.0))
        throw std::invalid_argument("config: threshold outside (0,1)");
}

struct GridPoint {
    int n = 0;
    int m = 0;
    double beta = 0.0;
    double sqrt_beta_log_n = 0.0;
};

// Row-major expansion: n outermost, then m, then the noise grid.
inline std::vector<GridPoint> expand_grid(const ExperimentConfig& config) {
    validate_config(config);
    std::vector<GridPoint> points;
    for (int n : config.n_values) {
        const double logn = std::log(static_cast<double>(n));
        for (int m : config.m_values) {
            if (!config.beta_values.empty()) {
                for (double beta : config.beta_values)
                    points.push_back({n, m, beta, std::sqrt(beta) * logn});
            } else {
                for (double x : config.sqrt_beta_log_n_values) {
                    const double beta = (x / logn) * (x / logn);
                    if (beta > 1.0)
                        throw std::invalid_argument("config: sqrt_beta_log_n " +
                                                    format_double(x) + " implies beta > 1 at n " +
                                                    std::to_string(n));
                    points.push_back({n, m, beta, x});
                }
            }
        }
    }
    return points;
}

// One stream per (base seed, n, beta, trial): independent of m and of the
// pipeline options, so runs that differ only in those share their draws.
inline RngSeed trial_seed(RngSeed base, int n, double beta, int trial) {
    RngSeed s = derive_stream(base, static_cast<std::uint64_t>(n));
    s = derive_stream(s, std::bit_cast<std::uint64_t>(beta));
    return derive_stream(s, static_cast<std::uint64_t>(trial));
}

struct TrialRecord {
    int n = 0;
    int m = 0;
    double beta = 0.0;
    double alpha = 0.0;
    double sqrt_beta_log_n = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    double recovery = 0.0;
    double frobenius = 0.0;
    double accuracy = 0.0;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Within-trial stream salts.
inline constexpr std::uint64_t kCleanupSalt = 0;
inline constexpr std::uint64_t kParentSalt = 1;
inline std::uint64_t noise_salt(int sample) { return 2 + 2 * static_cast<std::uint64_t>(sample); }
inline std::uint64_t perm_salt(int sample) { return 3 + 2 * static_cast<std::uint64_t>(sample); }

// Sample a parent, corrupt it m times, scramble the labels of samples
// 2..m, run the pipeline, and score it against the truth.
inline TrialRecord run_trial(const ExperimentConfig& config, const GridPoint& point,
                             int trial_index) {
    const int n = point.n;
    const int m = point.m;
    const RngSeed ts = trial_seed(config.base_seed, n, point.beta, trial_index);

    const double logn = std::log(static_cast<double>(n));
    const double p = config.p ? *config.p : logn * logn / n;
    const Graph parent = sample_er(n, p, derive_stream(ts, kParentSalt));
    const double alpha = config.alpha ? *config.alpha : edge_unbiased_alpha(parent, point.beta);
    const NoiseParams noise{alpha, point.beta};

    std::vector<Graph> observed;
    std::vector<Permutation> latents;
    observed.reserve(m);
    latents.reserve(m);
    for (int i = 0; i < m; ++i) {
        Graph raw = sample_noisy(parent, noise, derive_stream(ts, noise_salt(i)));
        if (i == 0) {
            latents.push_back(Permutation::identity(n));
            observed.push_back(std::move(raw));
        } else {
            Rng perm_rng(derive_stream(ts, perm_salt(i)));
            Permutation sigma = random_permutation(n, perm_rng);
            observed.push_back(permute(raw, sigma.inverse()));
            latents.push_back(std::move(sigma));
        }
    }

    RecoverOptions opts = config.pipeline;
    opts.cleanup_seed = derive_stream(ts, kCleanupSalt);
    opts.workers = 1;
    const RecoverResult result = recover(observed, opts);

    const std::vector<Permutation> estimated(result.alignment.composed.begin() + 1,
                                             result.alignment.composed.end());
    const std::vector<Permutation> truth(latents.begin() + 1, latents.end());
    TrialRecord record;
    record.n = n;
    record.m = m;
    record.beta = point.beta;
    record.alpha = alpha;
    record.sqrt_beta_log_n = point.sqrt_beta_log_n;
    record.trial = trial_index;
    record.seed = ts.value;
    record.recovery = mean_recovery(estimated, truth);
    record.frobenius = frobenius_sq(result.average, parent);
    record.accuracy = accuracy(result.estimate, parent);
    return record;
}

// Lower median: the element at rank floor((k-1)/2) of the sorted values.
inline double lower_median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("lower_median: no values");
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

struct PointSummary {
    int n = 0;
    int m = 0;
    double beta = 0.0;
    double sqrt_beta_log_n = 0.0;
    double recovery = 0.0;
    double frobenius = 0.0;
    double accuracy = 0.0;
};

struct ExperimentResult {
    std::vector<TrialRecord> records;    // grid order, trials innermost
    std::vector<PointSummary> summaries; // lower medians per grid point
};

inline ExperimentResult run_grid(const ExperimentConfig& config) {
    const std::vector<GridPoint> points = expand_grid(config);
    const int trials = config.trials;
    const int total = static_cast<int>(points.size()) * trials;
    const int workers = config.workers > 0 ? config.workers : default_worker_count();

    ExperimentResult out;
    out.records.resize(total);
    parallel_for(0, total, workers, [&](int task) {
        const GridPoint& point = points[task / trials];
        out.records[task] = run_trial(config, point, task % trials);
    });

    out.summaries.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<double> rec, fro, acc;
        for (int t = 0; t < trials; ++t) {
            const TrialRecord& r = out.records[i * trials + t];
            rec.push_back(r.recovery);
            fro.push_back(r.frobenius);
            acc.push_back(r.accuracy);
        }
        const GridPoint& p = points[i];
        out.summaries.push_back({p.n, p.m, p.beta, p.sqrt_beta_log_n, lower_median(rec),
                                 lower_median(fro), lower_median(acc)});
    }
    return out;
}

inline constexpr const char* kRecordCsvHeader =
    "n,m,beta,alpha,sqrt_beta_log_n,trial,seed,recovery,frobenius,accuracy";

inline void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << kRecordCsvHeader << '\n';
    for (const TrialRecord& r : records) {
        out << r.n << ',' << r.m << ',' << format_double(r.beta) << ',' << format_double(r.alpha)
            << ',' << format_double(r.sqrt_beta_log_n) << ',' << r.trial << ',' << r.seed << ','
            << format_double(r.recovery) << ',' << format_double(r.frobenius) << ','
            << format_double(r.accuracy) << '\n';
    }
}

inline std::string records_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    write_records_csv(out, records);
    return out.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline long long parse_int(const std::string& text, const std::string& origin) {
    const double x = parse_double(text, origin);
    const long long v = static_cast<long long>(x);
    if (static_cast<double>(v) != x) throw io_error(origin + ": expected integer, got " + text);
    return v;
}

} // namespace detail

inline std::vector<TrialRecord> read_records_csv(std::istream& in,
                                                 const std::string& origin = "<stream>") {
    std::string line;
    if (!std::getline(in, line) || line != kRecordCsvHeader)
        throw io_error(origin + ": expected header \"" + kRecordCsvHeader + "\"");
    std::vector<TrialRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        const std::vector<std::string> f = detail::split_csv_line(line);
        if (f.size() != 10) throw io_error(where + ": expected 10 fields, got " +
                                           std::to_string(f.size()));
        TrialRecord r;
        r.n = static_cast<int>(detail::parse_int(f[0], where));
        r.m = static_cast<int>(detail::parse_int(f[1], where));
        r.beta = parse_double(f[2], where);
        r.alpha = parse_double(f[3], where);
        r.sqrt_beta_log_n = parse_double(f[4], where);
        r.trial = static_cast<int>(detail::parse_int(f[5], where));
        {
            std::uint64_t seed = 0;
            const auto res = std::from_chars(f[6].data(), f[6].data() + f[6].size(), seed);
            if (res.ec != std::errc() || res.ptr != f[6].data() + f[6].size())
                throw io_error(where + ": malformed seed \"" + f[6] + "\"");
            r.seed = seed;
        }
        r.recovery = parse_double(f[7], where);
        r.frobenius = parse_double(f[8], where);
        r.accuracy = parse_double(f[9], where);
        records.push_back(r);
    }
    return records;
}

} // namespace netrecover

// Command-line front end: generate synthetic inputs, match or recover from
// edge-list files, run simulation grids, and check the parameter regime.
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netrecover/alignment.hpp"
#include "netrecover/config_json.hpp"
#include "netrecover/io.hpp"
#include "netrecover/matching.hpp"
#include "netrecover/plot.hpp"
#include "netrecover/recovery.hpp"
#include "netrecover/sampling.hpp"
#include "netrecover/simulate.hpp"

namespace {

using namespace netrecover;

struct GenerateArgs {
    int n = 0;
    int samples = 2;
    double p = -1.0; // negative selects log^2(n)/n
    double beta = 0.0;
    double alpha = -1.0; // negative selects the edge-unbiased value
    std::uint64_t seed = 1;
    std::string prefix = "sample";
    bool no_scramble = false;
};

void run_generate(const GenerateArgs& args) {
    const double logn = std::log(static_cast<double>(args.n));
    const double p = args.p < 0.0 ? logn * logn / args.n : args.p;
    const RngSeed base{args.seed};

    const Graph parent = sample_er(args.n, p, derive_stream(base, kParentSalt));
    const double alpha =
        args.alpha < 0.0 ? edge_unbiased_alpha(parent, args.beta) : args.alpha;
    const NoiseParams noise{alpha, args.beta};
    validate(noise);

    save_edge_list(args.prefix + "_parent.edges", parent);
    for (int i = 0; i < args.samples; ++i) {
        const Graph raw = sample_noisy(parent, noise, derive_stream(base, noise_salt(i)));
        Permutation sigma = Permutation::identity(args.n);
        if (i > 0 && !args.no_scramble) {
            Rng rng(derive_stream(base, perm_salt(i)));
            sigma = random_permutation(args.n, rng);
        }
        const std::string stem = args.prefix + "_sample" + std::to_string(i + 1);
        save_edge_list(stem + ".edges", permute(raw, sigma.inverse()));
        save_permutation(stem + ".truth", sigma);
    }
    std::cout << "wrote " << args.prefix << "_parent.edges and " << args.samples
              << " samples (n=" << args.n << ", p=" << format_double(p)
              << ", alpha=" << format_double(alpha) << ", beta=" << format_double(args.beta)
              << ")\n";
}

struct MatchArgs {
    std::string g1_path;
    std::string g2_path;
    std::string out_path;
    bool use_seeds = false;
    double seed_quantile = 0.9;
    double seed_cutoff = 0.1;
};

void run_match(const MatchArgs& args) {
    const Graph g1 = load_edge_list(args.g1_path);
    const Graph g2 = load_edge_list(args.g2_path);
    const CostMatrix z = profile_distance_matrix(g1, g2);
    Permutation pi = Permutation::identity(g1.node_count());
    if (args.use_seeds) {
        const SeedSet seeds =
            extract_seeds(g1, g2, z, degree_quantile(g1, args.seed_quantile),
                          degree_quantile(g2, args.seed_quantile), args.seed_cutoff);
        pi = match_with_distance_matrix(z, &seeds);
    } else {
        pi = match_with_distance_matrix(z);
    }
    if (args.out_path.empty()) {
        write_permutation(std::cout, pi);
    } else {
        save_permutation(args.out_path, pi);
        std::cout << "wrote " << args.out_path << "\n";
    }
}

struct RecoverArgs {
    std::vector<std::string> inputs;
    std::string estimate_path = "estimate.edges";
    std::string average_path = "average.csv";
    std::string alignment_prefix;
    std::string threshold = "auto";
    bool no_cleanup = false;
    bool use_seeds = false;
    int iterations = 0;
    int max_draws = 0;
    std::uint64_t cleanup_seed = 0;
    int workers = 0;
};

void run_recover(const RecoverArgs& args) {
    std::vector<Graph> graphs;
    graphs.reserve(args.inputs.size());
    for (const std::string& path : args.inputs) graphs.push_back(load_edge_list(path));

    RecoverOptions opts;
    opts.use_cleanup = !args.no_cleanup;
    opts.use_seeds = args.use_seeds;
    opts.cleanup_iterations = args.iterations;
    opts.cleanup_max_draws = args.max_draws;
    opts.cleanup_seed = RngSeed{args.cleanup_seed};
    opts.workers = args.workers > 0 ? args.workers : default_worker_count();
    if (args.threshold != "auto") opts.w = parse_double(args.threshold, "--threshold");

    const RecoverResult result = recover(graphs, opts);
    save_edge_list(args.estimate_path, result.estimate);
    std::cout << "wrote " << args.estimate_path << " (threshold "
              << format_double(result.threshold_used) << ", "
              << result.estimate.edge_count() << " edges)\n";
    if (!args.average_path.empty()) {
        std::ofstream out(args.average_path);
        if (!out) throw io_error(args.average_path + ": cannot open for writing");
        write_average_csv(out, result.average);
        std::cout << "wrote " << args.average_path << "\n";
    }
    if (!args.alignment_prefix.empty()) {
        for (std::size_t i = 0; i < result.alignment.composed.size(); ++i)
            save_permutation(args.alignment_prefix + std::to_string(i) + ".perm",
                             result.alignment.composed[i]);
        std::cout << "wrote " << result.alignment.composed.size() << " alignment files\n";
    }
}

struct SimulateArgs {
    std::string config_path;
    std::string out_path = "records.csv";
    std::string plot_path;
    int workers = -1; // negative keeps the config value
};

void run_simulate(const SimulateArgs& args) {
    ExperimentConfig config = load_config(args.config_path);
    if (args.workers >= 0) config.workers = args.workers;

    const ExperimentResult result = run_grid(config);
    {
        std::ofstream out(args.out_path);
        if (!out) throw io_error(args.out_path + ": cannot open for writing");
        write_records_csv(out, result.records);
    }
    std::cout << "wrote " << result.records.size() << " records to " << args.out_path << "\n";
    if (!args.plot_path.empty()) {
        save_plot_svg(args.plot_path, result.records);
        std::cout << "wrote " << args.plot_path << "\n";
    }
    std::cout << "# n m beta sqrt_beta_log_n recovery frobenius accuracy (lower medians)\n";
    for (const PointSummary& s : result.summaries)
        std::cout << s.n << ' ' << s.m << ' ' << format_double(s.beta) << ' '
                  << format_double(s.sqrt_beta_log_n) << ' ' << format_double(s.recovery) << ' '
                  << format_double(s.frobenius) << ' ' << format_double(s.accuracy) << "\n";
}

struct RegimeArgs {
    int n = 0;
    double q = -1.0;
    double s = -1.0;
    double p = -1.0;
    double alpha = 0.0;
    double beta = 0.0;
    double sigma0 = 0.1;
    double bins_scale = 1.0;
    double density_scale = 1.0;
};

void run_check_regime(const RegimeArgs& args) {
    CorrParams cp{};
    if (args.q >= 0.0 || args.s >= 0.0) {
        if (args.q < 0.0 || args.s < 0.0)
            throw std::invalid_argument("check-regime: --q and --s must be given together");
        cp = CorrParams{args.q, args.s};
    } else if (args.p >= 0.0) {
        cp = to_correlated_params(args.p, NoiseParams{args.alpha, args.beta});
    } else {
        throw std::invalid_argument("check-regime: give either --q/--s or --p/--alpha/--beta");
    }
    const RegimeReport report =
        check_regime(args.n, cp, RegimeConstants{args.sigma0, args.bins_scale,
                                                 args.density_scale});
    std::cout << "q = " << format_double(cp.q) << ", s = " << format_double(cp.s)
              << ", sigma = " << format_double(report.sigma) << "\n";
    std::cout << "profile bins: " << format_double(report.profile_bins) << "\n";
    std::cout << "sigma <= sigma0/log n: " << (report.sigma_ok ? "pass" : "fail") << "\n";
    std::cout << "q <= 1/12:             " << (report.q_ok ? "pass" : "fail") << "\n";
    std::cout << "n q >= C0 log^2 n:     " << (report.density_ok ? "pass" : "fail") << "\n";
    std::cout << "overall: " << (report.all_ok() ? "pass" : "fail") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-sample network recovery over unaligned noisy graphs"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* cmd_gen = app.add_subcommand("generate", "sample a parent graph and noisy copies");
    cmd_gen->add_option("-n,--nodes", gen.n, "node count")->required();
    cmd_gen->add_option("-m,--samples", gen.samples, "number of noisy samples")
        ->default_val(2);
    cmd_gen->add_option("-p,--density", gen.p, "parent edge density (default log^2(n)/n)");
    cmd_gen->add_option("--beta", gen.beta, "edge removal probability")->default_val(0.0);
    cmd_gen->add_option("--alpha", gen.alpha, "edge insertion probability (default edge-unbiased)");
    cmd_gen->add_option("--seed", gen.seed, "base RNG seed")->default_val(1);
    cmd_gen->add_option("-o,--prefix", gen.prefix, "output file prefix")->default_val("sample");
    cmd_gen->add_flag("--no-scramble", gen.no_scramble, "keep all samples in the parent frame");

    MatchArgs mat;
    CLI::App* cmd_match = app.add_subcommand("match", "align two graphs by degree profiles");
    cmd_match->add_option("first", mat.g1_path, "first edge-list file")->required();
    cmd_match->add_option("second", mat.g2_path, "second edge-list file")->required();
    cmd_match->add_option("-o,--output", mat.out_path, "permutation output file (default stdout)");
    cmd_match->add_flag("--use-seeds", mat.use_seeds, "pin high-confidence pairs");
    cmd_match->add_option("--seed-quantile", mat.seed_quantile, "degree quantile for seeds")
        ->default_val(0.9);
    cmd_match->add_option("--seed-cutoff", mat.seed_cutoff, "profile distance cutoff for seeds")
        ->default_val(0.1);

    RecoverArgs rec;
    CLI::App* cmd_rec = app.add_subcommand("recover", "estimate the parent from noisy samples");
    cmd_rec->add_option("inputs", rec.inputs, "edge-list files (at least 2)")
        ->required()
        ->expected(2, -1);
    cmd_rec->add_option("-o,--estimate", rec.estimate_path, "estimated edge-list output")
        ->default_val("estimate.edges");
    cmd_rec->add_option("--average", rec.average_path, "averaged matrix CSV output (empty skips)")
        ->default_val("average.csv");
    cmd_rec->add_option("--alignment-prefix", rec.alignment_prefix,
                        "write composed alignments to <prefix><i>.perm");
    cmd_rec->add_option("-w,--threshold", rec.threshold, "threshold in (0,1), or auto")
        ->default_val("auto");
    cmd_rec->add_flag("--no-cleanup", rec.no_cleanup, "skip the joint refinement pass");
    cmd_rec->add_flag("--use-seeds", rec.use_seeds, "pin high-confidence pairs when matching");
    cmd_rec->add_option("--iterations", rec.iterations, "refinement iterations per pair (0 auto)")
        ->default_val(0);
    cmd_rec->add_option("--max-draws", rec.max_draws, "refinement draw budget (0 auto)")
        ->default_val(0);
    cmd_rec->add_option("--cleanup-seed", rec.cleanup_seed, "RNG seed for refinement draws")
        ->default_val(0);
    cmd_rec->add_option("--workers", rec.workers, "worker threads (0 = hardware)")
        ->default_val(0);

    SimulateArgs sim;
    CLI::App* cmd_sim = app.add_subcommand("simulate", "run an experiment grid from a JSON config");
    cmd_sim->add_option("config", sim.config_path, "JSON config file")->required();
    cmd_sim->add_option("-o,--output", sim.out_path, "records CSV output")
        ->default_val("records.csv");
    cmd_sim->add_option("--plot", sim.plot_path, "SVG plot output");
    cmd_sim->add_option("--workers", sim.workers, "override config worker count");

    RegimeArgs reg;
    CLI::App* cmd_reg = app.add_subcommand("check-regime", "evaluate the recovery conditions");
    cmd_reg->add_option("-n,--nodes", reg.n, "node count")->required();
    cmd_reg->add_option("-q", reg.q, "marginal edge density");
    cmd_reg->add_option("-s", reg.s, "edge correlation");
    cmd_reg->add_option("-p,--density", reg.p, "parent density (with --alpha/--beta)");
    cmd_reg->add_option("--alpha", reg.alpha, "edge insertion probability")->default_val(0.0);
    cmd_reg->add_option("--beta", reg.beta, "edge removal probability")->default_val(0.0);
    cmd_reg->add_option("--sigma0", reg.sigma0, "noise constant")->default_val(0.1);
    cmd_reg->add_option("--bins-scale", reg.bins_scale, "profile bin scale")->default_val(1.0);
    cmd_reg->add_option("--density-scale", reg.density_scale, "density constant")
        ->default_val(1.0);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_gen->parsed()) run_generate(gen);
        if (cmd_match->parsed()) run_match(mat);
        if (cmd_rec->parsed()) run_recover(rec);
        if (cmd_sim->parsed()) run_simulate(sim);
        if (cmd_reg->parsed()) run_check_regime(reg);
        return 0;
    } catch (const netrecover::degenerate_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const netrecover::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

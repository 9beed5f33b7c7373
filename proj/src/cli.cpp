#include "randsvd/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "randsvd/dmat.hpp"
#include "randsvd/errors.hpp"
#include "randsvd/parallel.hpp"
#include "randsvd/pca.hpp"
#include "randsvd/svd.hpp"

namespace randsvd::cli {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

DenseMatrix column_vector(const std::vector<double>& v) {
    return DenseMatrix(v.size(), 1, v);
}

synth::SpectrumKind spectrum_from_flags(const std::string& name,
                                        const std::optional<double>& beta) {
    if (name == "sharp") {
        if (!beta) throw UsageError("--spectrum sharp requires --beta");
        if (!(*beta > 0.0)) throw UsageError("--beta must be > 0");
        return synth::SpectrumKind::sharp(*beta);
    }
    if (beta) throw UsageError("--beta is only meaningful with --spectrum sharp");
    if (name == "fast") return synth::SpectrumKind::fast();
    if (name == "slow") return synth::SpectrumKind::slow();
    throw UsageError("--spectrum must be one of fast, sharp, slow (got '" + name +
                     "')");
}

}  // namespace

RsvdConfig SolverOpts::to_config(std::size_t resolved_k) const {
    RsvdConfig cfg;
    cfg.k = resolved_k;
    cfg.oversample = oversample;
    cfg.power_q = power_q;
    cfg.seed = seed;
    if (epsilon) {
        cfg.epsilon = *epsilon;
        cfg.epsilon_mode = true;
    }
    return cfg;
}

std::size_t SolverOpts::resolve_k(std::size_t limit) const {
    if (k) return *k;
    return static_cast<std::size_t>(
        std::ceil(*k_frac * static_cast<double>(limit)));
}

CliCommand parse_args(const std::vector<std::string>& args) {
    CLI::App app{"randomized k-SVD toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic test matrix");
    std::size_t rows = 0, cols = 0;
    std::string spectrum;
    double beta_val = 0.0;
    std::uint64_t seed = 0;
    std::string out, input, csv;
    gen->add_option("--rows", rows, "matrix rows")->required();
    gen->add_option("--cols", cols, "matrix cols")->required();
    gen->add_option("--spectrum", spectrum, "decay law: fast, sharp, slow")
        ->required();
    auto* gen_beta = gen->add_option("--beta", beta_val, "sharp-decay breakout");
    gen->add_option("--seed", seed, "RNG seed (default 0)");
    gen->add_option("--out", out, "output DMAT path")->required();

    // shared solver flags
    std::size_t k_val = 0;
    double k_frac = 0.0, epsilon = 0.0;
    std::size_t oversample = 10, power_q = 2;
    unsigned threads = 1;
    const auto add_solver_flags = [&](CLI::App* cmd) {
        auto* ko = cmd->add_option("--k", k_val, "target rank (>= 1)")
                       ->check(CLI::PositiveNumber);
        auto* kf = cmd->add_option("--k-frac", k_frac,
                                   "target rank as a fraction of the width");
        ko->excludes(kf);
        kf->excludes(ko);
        cmd->add_option("--oversample", oversample, "extra sketch columns");
        cmd->add_option("--power-q", power_q, "power-iteration rounds");
        cmd->add_option("--epsilon", epsilon,
                        "accuracy parameter; switches the sketch width to ceil(k/epsilon)");
        cmd->add_option("--seed", seed, "RNG seed (default 0)");
        cmd->add_option("--threads", threads, "kernel worker threads")
            ->check(CLI::PositiveNumber);
    };

    // svd
    auto* svd = app.add_subcommand("svd", "full SVD of a DMAT file");
    svd->add_option("input", input, "input DMAT path")->required();
    svd->add_option("--out", out, "output prefix")->required();
    svd->add_option("--threads", threads, "kernel worker threads")
        ->check(CLI::PositiveNumber);

    // rsvd
    auto* rsvd = app.add_subcommand("rsvd", "randomized k-SVD of a DMAT file");
    rsvd->add_option("input", input, "input DMAT path")->required();
    add_solver_flags(rsvd);
    bool values_only = false;
    rsvd->add_flag("--values-only", values_only,
                   "compute singular values only (skip back-projection)");
    rsvd->add_option("--out", out, "output prefix")->required();

    // pca
    auto* pca = app.add_subcommand("pca", "principal component analysis");
    pca->add_option("input", input, "input DMAT path (samples as rows)")
        ->required();
    add_solver_flags(pca);
    pca->add_option("--out", out, "output prefix")->required();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "timed accuracy grid");
    std::string preset;
    std::size_t reps = 0;
    bench_cmd->add_option("preset", preset, "preset name")->required();
    bench_cmd->add_option("--reps", reps, "timed repetitions per solver")
        ->check(CLI::PositiveNumber);
    auto* bench_seed = bench_cmd->add_option("--seed", seed, "base RNG seed");
    auto* bench_over =
        bench_cmd->add_option("--oversample", oversample, "extra sketch columns");
    auto* bench_q =
        bench_cmd->add_option("--power-q", power_q, "power-iteration rounds");
    auto* bench_beta =
        bench_cmd->add_option("--beta", beta_val, "sharp-decay breakout override");
    bench_cmd->add_option("--threads", threads, "kernel worker threads")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--csv", csv, "CSV destination (default stdout)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("randsvd");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const auto solver_opts = [&](CLI::App* cmd) {
        SolverOpts o;
        if (cmd->count("--k")) o.k = k_val;
        if (cmd->count("--k-frac")) {
            if (!(k_frac > 0.0) || k_frac > 1.0)
                throw UsageError("--k-frac must lie in (0, 1]");
            o.k_frac = k_frac;
        }
        if (!o.k && !o.k_frac) throw UsageError("one of --k / --k-frac is required");
        o.oversample = oversample;
        o.power_q = power_q;
        if (cmd->count("--epsilon")) {
            if (!(epsilon > 0.0 && epsilon < 1.0))
                throw UsageError("--epsilon must lie in (0, 1)");
            o.epsilon = epsilon;
        }
        o.seed = seed;
        o.threads = threads;
        return o;
    };

    if (gen->parsed()) {
        if (rows < 1 || cols < 1 || rows < cols)
            throw UsageError("gen requires --rows >= --cols >= 1");
        const auto kind = spectrum_from_flags(
            spectrum, gen_beta->count() ? std::optional<double>(beta_val)
                                        : std::nullopt);
        return GenCmd{synth::SynthSpec{rows, cols, kind, seed}, out};
    }
    if (svd->parsed()) return SvdCmd{input, out, threads};
    if (rsvd->parsed()) return RsvdCmd{input, solver_opts(rsvd), out, values_only};
    if (pca->parsed()) return PcaCmd{input, solver_opts(pca), out};

    // bench
    bool known = false;
    for (const auto& name : bench::preset_names()) known = known || name == preset;
    if (!known) throw UsageError("unknown bench preset '" + preset + "'");
    BenchCmd cmd;
    cmd.preset = preset;
    if (reps) cmd.reps = reps;
    if (bench_seed->count()) cmd.seed = seed;
    if (bench_over->count()) cmd.oversample = oversample;
    if (bench_q->count()) cmd.power_q = power_q;
    if (bench_beta->count()) cmd.beta = beta_val;
    cmd.threads = threads;
    cmd.csv = csv;
    return cmd;
}

namespace {

int run_gen(const GenCmd& cmd) {
    Timer timer;
    const DenseMatrix a = synth::synth_matrix(cmd.spec);
    const double wall = timer.elapsed();
    write_dmat(cmd.out, a);
    std::cerr << "gen: shape=" << a.rows() << "x" << a.cols()
              << " spectrum=" << cmd.spec.kind.name() << " seed=" << cmd.spec.seed
              << " out=" << cmd.out << " wall=" << fmt3(wall) << "s\n";
    return 0;
}

int run_svd(const SvdCmd& cmd) {
    const DenseMatrix a = read_dmat(cmd.input);
    set_max_threads(cmd.threads);
    Timer timer;
    const SvdFactors f = dense_svd(a);
    const double wall = timer.elapsed();
    write_dmat(cmd.out_prefix + ".u.dmat", f.u);
    write_dmat(cmd.out_prefix + ".sigma.dmat", column_vector(f.sigma));
    write_dmat(cmd.out_prefix + ".v.dmat", f.v);
    std::cerr << "svd: shape=" << a.rows() << "x" << a.cols()
              << " r=" << f.sigma.size() << " wall=" << fmt3(wall)
              << "s threads=" << cmd.threads << "\n";
    return 0;
}

int run_rsvd(const RsvdCmd& cmd) {
    const DenseMatrix a = read_dmat(cmd.input);
    set_max_threads(cmd.opts.threads);
    const std::size_t k = cmd.opts.resolve_k(a.cols());
    const RsvdConfig cfg = cmd.opts.to_config(k);
    Timer timer;
    std::string residual = "n/a";
    std::size_t width = cfg.sketch_width(a.rows(), a.cols());
    double wall = 0.0;
    if (cmd.values_only) {
        const std::vector<double> sigma = singular_values_only(a, cfg);
        wall = timer.elapsed();
        write_dmat(cmd.out_prefix + ".sigma.dmat", column_vector(sigma));
    } else {
        const RsvdResult res = randomized_ksvd(a, cfg);
        wall = timer.elapsed();
        width = res.sketch_width;
        residual = fmt3(res.residual_fro(a));
        write_dmat(cmd.out_prefix + ".u.dmat", res.factors.u);
        write_dmat(cmd.out_prefix + ".sigma.dmat", column_vector(res.factors.sigma));
        write_dmat(cmd.out_prefix + ".v.dmat", res.factors.v);
    }
    std::cerr << "rsvd: shape=" << a.rows() << "x" << a.cols() << " k=" << k
              << " s=" << width << " q=" << cfg.power_q << " seed=" << cfg.seed
              << " residual=" << residual << " wall=" << fmt3(wall)
              << "s threads=" << cmd.opts.threads << "\n";
    return 0;
}

int run_pca(const PcaCmd& cmd) {
    const DenseMatrix x = read_dmat(cmd.input);
    set_max_threads(cmd.opts.threads);
    const std::size_t limit = std::min(x.rows(), x.cols());
    const std::size_t k = cmd.opts.resolve_k(limit);
    const RsvdConfig cfg = cmd.opts.to_config(k);
    Timer timer;
    const pca::PcaModel model = pca::fit_pca(x, k, cfg);
    const double wall = timer.elapsed();
    write_dmat(cmd.out_prefix + ".components.dmat", model.components);
    write_dmat(cmd.out_prefix + ".mean.dmat", column_vector(model.mean));
    {
        const std::string path = cmd.out_prefix + ".pca.txt";
        std::ofstream txt(path, std::ios::trunc);
        if (!txt) throw IoError("cannot create " + path, path, 0);
        txt << "k=" << k << "\n"
            << "n_samples=" << x.rows() << "\n"
            << "n_features=" << x.cols() << "\n"
            << "seed=" << cfg.seed << "\n";
        for (const double v : model.explained_variance) txt << fmt17(v) << "\n";
        if (!txt) throw IoError("write failure on " + path, path, 0);
    }
    std::cerr << "pca: shape=" << x.rows() << "x" << x.cols() << " k=" << k
              << " s=" << cfg.sketch_width(x.rows(), x.cols())
              << " q=" << cfg.power_q << " seed=" << cfg.seed
              << " wall=" << fmt3(wall) << "s threads=" << cmd.opts.threads
              << "\n";
    return 0;
}

int run_bench(const BenchCmd& cmd) {
    bench::GridConfig grid = bench::preset(cmd.preset);
    if (cmd.reps) grid.repetitions = *cmd.reps;
    if (cmd.seed) grid.base.seed = *cmd.seed;
    if (cmd.oversample) grid.base.oversample = *cmd.oversample;
    if (cmd.power_q) grid.base.power_q = *cmd.power_q;
    if (cmd.beta) grid.beta = *cmd.beta;
    set_max_threads(cmd.threads);

    Timer timer;
    const bench::GridOutcome outcome = bench::run_grid(grid);
    const double wall = timer.elapsed();

    if (cmd.csv.empty()) {
        bench::write_csv(outcome.rows, std::cout);
    } else {
        std::ofstream out(cmd.csv, std::ios::trunc);
        if (!out) throw IoError("cannot create " + cmd.csv, cmd.csv, 0);
        bench::write_csv(outcome.rows, out);
    }

    std::size_t flagged = 0;
    for (const auto& row : outcome.rows) {
        if (row.max_rel_err > grid.tolerance) {
            ++flagged;
            std::cerr << "bench: accuracy flag at n=" << row.n
                      << " k=" << row.k << ": max_rel_err="
                      << fmt3(row.max_rel_err) << " > " << fmt3(grid.tolerance)
                      << "\n";
        }
    }
    for (const auto& err : outcome.errors)
        std::cerr << "bench: cell n=" << err.n << " frac=" << fmt3(err.k_fraction)
                  << " failed: " << err.message << "\n";

    std::cerr << "bench: preset=" << cmd.preset << " rows=" << outcome.rows.size()
              << " flagged=" << flagged << " errors=" << outcome.errors.size()
              << " seed=" << grid.base.seed << " q=" << grid.base.power_q
              << " threads=" << cmd.threads << " wall=" << fmt3(wall) << "s\n";
    return 0;
}

}  // namespace

int run(const CliCommand& cmd) {
    return std::visit(
        [](const auto& c) -> int {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, GenCmd>) return run_gen(c);
            else if constexpr (std::is_same_v<T, SvdCmd>) return run_svd(c);
            else if constexpr (std::is_same_v<T, RsvdCmd>) return run_rsvd(c);
            else if constexpr (std::is_same_v<T, PcaCmd>) return run_pca(c);
            else return run_bench(c);
        },
        cmd);
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        return run(parse_args(args));
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace randsvd::cli

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "randsvd/bench.hpp"
#include "randsvd/rsvd.hpp"
#include "randsvd/synth.hpp"

namespace randsvd::cli {

/// Solver flags shared by the rsvd and pca subcommands. Exactly one of
/// k / k_frac is set (validated at parse time).
struct SolverOpts {
    std::optional<std::size_t> k;
    std::optional<double> k_frac;
    std::size_t oversample = 10;
    std::size_t power_q = 2;
    std::optional<double> epsilon;  ///< enables epsilon-mode sketch sizing
    std::uint64_t seed = 0;
    unsigned threads = 1;

    RsvdConfig to_config(std::size_t resolved_k) const;
    std::size_t resolve_k(std::size_t limit) const;
};

struct GenCmd {
    synth::SynthSpec spec;
    std::string out;
};

struct SvdCmd {
    std::string input;
    std::string out_prefix;
    unsigned threads = 1;
};

struct RsvdCmd {
    std::string input;
    SolverOpts opts;
    std::string out_prefix;
    bool values_only = false;
};

struct PcaCmd {
    std::string input;
    SolverOpts opts;
    std::string out_prefix;
};

struct BenchCmd {
    std::string preset;
    std::optional<std::size_t> reps;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> oversample;
    std::optional<std::size_t> power_q;
    std::optional<double> beta;
    unsigned threads = 1;
    std::string csv;  ///< empty = stdout
};

using CliCommand = std::variant<GenCmd, SvdCmd, RsvdCmd, PcaCmd, BenchCmd>;

/// Parse the arguments after the program name into a validated command;
/// throws UsageError naming the offending flag otherwise.
CliCommand parse_args(const std::vector<std::string>& args);

/// Execute a parsed command: write outputs, print the one-line summary to
/// stderr, return 0. Errors propagate as exceptions.
int run(const CliCommand& cmd);

/// Full entry point: parse + run with the exit-code contract
/// (0 ok, 1 usage, 2 I/O, 3 numerical/solver).
int run_cli(int argc, const char* const* argv);

}  // namespace randsvd::cli

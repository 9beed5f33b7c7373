#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "randsvd/rsvd.hpp"
#include "randsvd/synth.hpp"

namespace randsvd::bench {

/// One timed execution of a solver.
struct TimingSample {
    std::string solver_name;
    double wall_seconds = 0.0;
};

/// Repetition statistics for one solver on one input.
struct BenchStats {
    std::string solver_name;
    std::size_t n_runs = 0;
    double mean_seconds = 0.0;
    double std_seconds = 0.0;  ///< sample standard deviation (n-1); 0 for a single run
};

/// One line of the speedup report.
struct SpeedupRow {
    std::string spectrum;
    std::size_t m = 0;
    std::size_t n = 0;
    double k_fraction = 0.0;
    std::size_t k = 0;
    std::string competitor_name;
    double mean_competitor_s = 0.0;
    double std_competitor_s = 0.0;
    double mean_ours_s = 0.0;
    double std_ours_s = 0.0;
    double ratio = 0.0;    ///< mean(competitor) / mean(ours)
    double band_lo = 0.0;  ///< (mean* - std*) / (mean_ours + std_ours)
    std::optional<double> band_hi;  ///< (mean* + std*) / (mean_ours - std_ours); empty when mean_ours <= std_ours
    double max_rel_err = 0.0;  ///< worst per-value singular-value error vs the oracle
};

/// Wall-clock samples for `repetitions` runs of task, after one untimed
/// warm-up run. repetitions >= 1.
std::vector<TimingSample> time_solver_samples(const std::string& solver_name,
                                              const std::function<void()>& task,
                                              std::size_t repetitions);

/// Mean / sample-std over timing samples.
BenchStats summarize(const std::vector<TimingSample>& samples);

/// Warm up, run `repetitions` times, return the statistics.
BenchStats time_solver(const std::string& solver_name,
                       const std::function<void()>& task,
                       std::size_t repetitions);

/// Ratio and error band of a competitor against our stats; requires
/// ours.mean_seconds > 0. Only the statistics fields of the row are filled.
SpeedupRow speedup_ratio(const BenchStats& competitor, const BenchStats& ours);

/// The in-repo baseline solvers a grid can time against.
enum class Baseline { full_svd };

/// One benchmark sweep: spectrum preset, matrix height, column grid and
/// rank fractions, solver configuration.
struct GridConfig {
    synth::SpectrumKind kind = synth::SpectrumKind::fast();
    std::size_t m = 500;
    std::vector<std::size_t> n_grid;
    std::vector<double> k_fractions;
    RsvdConfig base;             ///< seed / oversample / power_q used per cell
    std::size_t repetitions = 10;
    double tolerance = 1e-8;     ///< accuracy gate recorded via max_rel_err
    std::optional<double> beta;  ///< sharp decay breakout; defaults to k + 1 per cell
    Baseline baseline = Baseline::full_svd;
};

/// A cell whose solver threw; the row is omitted and the grid continues.
struct GridError {
    std::size_t n = 0;
    double k_fraction = 0.0;
    std::string message;
};

struct CellTiming {
    std::vector<TimingSample> competitor;
    std::vector<TimingSample> ours;
};

struct GridOutcome {
    std::vector<SpeedupRow> rows;
    std::vector<CellTiming> timings;  ///< parallel to rows
    std::vector<GridError> errors;
};

/// For each (n, fraction): build the synth matrix once, time the baseline
/// full SVD and singular_values_only, audit the top-k singular values
/// against the oracle, and emit one row. Rows whose max_rel_err exceeds
/// cfg.tolerance are still emitted (flagged by the value itself).
GridOutcome run_grid(const GridConfig& cfg);

inline constexpr const char* kCsvHeader =
    "spectrum,m,n,k_fraction,k,competitor,mean_competitor_s,std_competitor_s,"
    "mean_ours_s,std_ours_s,ratio,band_lo,band_hi,max_rel_err";

/// Emit header + rows, floats at 17 significant digits, LF line endings.
/// An undefined band_hi becomes an empty field.
void write_csv(const std::vector<SpeedupRow>& rows, std::ostream& out);

/// Inverse of write_csv; round-trips every field bit-exactly.
std::vector<SpeedupRow> read_csv(std::istream& in);

/// Named presets wired into the CLI: {fast,sharp,slow}-small (m=500,
/// n in {100,200,400}), {fast,sharp,slow}-2000 (m=2000, n in
/// {250,500,1000,2000}) and perf-2000 (the single 2000x2000, k=1% cell).
GridConfig preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace randsvd::bench

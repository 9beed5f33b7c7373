#include "randsvd/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "randsvd/errors.hpp"
#include "randsvd/svd.hpp"

namespace randsvd::bench {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& field, std::size_t line_no) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0')
        throw ArgumentError("bad CSV float '" + field + "' on line " +
                            std::to_string(line_no));
    return v;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace

std::vector<TimingSample> time_solver_samples(const std::string& solver_name,
                                              const std::function<void()>& task,
                                              std::size_t repetitions) {
    if (repetitions < 1)
        throw ArgumentError("time_solver needs repetitions >= 1");
    using clock = std::chrono::steady_clock;
    task();  // warm-up, untimed
    std::vector<TimingSample> samples;
    samples.reserve(repetitions);
    for (std::size_t r = 0; r < repetitions; ++r) {
        const auto t0 = clock::now();
        task();
        const auto t1 = clock::now();
        samples.push_back(
            {solver_name, std::chrono::duration<double>(t1 - t0).count()});
    }
    return samples;
}

BenchStats summarize(const std::vector<TimingSample>& samples) {
    if (samples.empty()) throw ArgumentError("summarize of zero samples");
    BenchStats s;
    s.solver_name = samples.front().solver_name;
    s.n_runs = samples.size();
    double acc = 0.0;
    for (const auto& t : samples) acc += t.wall_seconds;
    s.mean_seconds = acc / static_cast<double>(s.n_runs);
    if (s.n_runs > 1) {
        double var = 0.0;
        for (const auto& t : samples) {
            const double d = t.wall_seconds - s.mean_seconds;
            var += d * d;
        }
        s.std_seconds = std::sqrt(var / static_cast<double>(s.n_runs - 1));
    }
    return s;
}

BenchStats time_solver(const std::string& solver_name,
                       const std::function<void()>& task,
                       std::size_t repetitions) {
    return summarize(time_solver_samples(solver_name, task, repetitions));
}

SpeedupRow speedup_ratio(const BenchStats& competitor, const BenchStats& ours) {
    if (!(ours.mean_seconds > 0.0))
        throw ArgumentError("speedup_ratio needs mean(ours) > 0");
    SpeedupRow row;
    row.competitor_name = competitor.solver_name;
    row.mean_competitor_s = competitor.mean_seconds;
    row.std_competitor_s = competitor.std_seconds;
    row.mean_ours_s = ours.mean_seconds;
    row.std_ours_s = ours.std_seconds;
    row.ratio = competitor.mean_seconds / ours.mean_seconds;
    row.band_lo = (competitor.mean_seconds - competitor.std_seconds) /
                  (ours.mean_seconds + ours.std_seconds);
    if (ours.mean_seconds > ours.std_seconds)
        row.band_hi = (competitor.mean_seconds + competitor.std_seconds) /
                      (ours.mean_seconds - ours.std_seconds);
    return row;
}

GridOutcome run_grid(const GridConfig& cfg) {
    GridOutcome out;
    for (const std::size_t n : cfg.n_grid) {
        for (const double fraction : cfg.k_fractions) {
            if (!(fraction > 0.0) || fraction > 1.0)
                throw ArgumentError("k fraction must lie in (0, 1], got " +
                                    fmt17(fraction));
            const std::size_t k = static_cast<std::size_t>(
                std::ceil(fraction * static_cast<double>(n)));
            try {
                synth::SpectrumKind kind = cfg.kind;
                if (kind.tag() == synth::SpectrumKind::Tag::sharp)
                    kind = synth::SpectrumKind::sharp(
                        cfg.beta.value_or(static_cast<double>(k + 1)));

                // one deterministic matrix per cell
                const std::uint64_t cell_seed = cfg.base.seed +
                                                n * 1315423911ULL +
                                                k * 2654435761ULL;
                const DenseMatrix a =
                    synth::synth_matrix({cfg.m, n, kind, cell_seed});

                RsvdConfig solver_cfg = cfg.base;
                solver_cfg.k = k;
                solver_cfg.seed = cell_seed;

                std::optional<SvdFactors> oracle;
                std::vector<double> ours_sigma;
                const auto baseline_task = [&] { oracle = dense_svd(a); };
                const auto ours_task = [&] {
                    ours_sigma = singular_values_only(a, solver_cfg);
                };

                CellTiming timing;
                timing.competitor =
                    time_solver_samples("full_svd", baseline_task, cfg.repetitions);
                timing.ours =
                    time_solver_samples("rsvd", ours_task, cfg.repetitions);

                SpeedupRow row = speedup_ratio(summarize(timing.competitor),
                                               summarize(timing.ours));
                row.spectrum = kind.name();
                row.m = cfg.m;
                row.n = n;
                row.k_fraction = fraction;
                row.k = k;
                row.max_rel_err = 0.0;
                for (std::size_t i = 0; i < k; ++i) {
                    const double rel = std::abs(ours_sigma[i] - oracle->sigma[i]) /
                                       oracle->sigma[i];
                    row.max_rel_err = std::max(row.max_rel_err, rel);
                }
                out.rows.push_back(std::move(row));
                out.timings.push_back(std::move(timing));
            } catch (const std::exception& e) {
                out.errors.push_back({n, fraction, e.what()});
            }
        }
    }
    return out;
}

void write_csv(const std::vector<SpeedupRow>& rows, std::ostream& out) {
    out << kCsvHeader << "\n";
    for (const SpeedupRow& r : rows) {
        out << r.spectrum << ',' << r.m << ',' << r.n << ','
            << fmt17(r.k_fraction) << ',' << r.k << ',' << r.competitor_name
            << ',' << fmt17(r.mean_competitor_s) << ','
            << fmt17(r.std_competitor_s) << ',' << fmt17(r.mean_ours_s) << ','
            << fmt17(r.std_ours_s) << ',' << fmt17(r.ratio) << ','
            << fmt17(r.band_lo) << ',';
        if (r.band_hi) out << fmt17(*r.band_hi);
        out << ',' << fmt17(r.max_rel_err) << '\n';
    }
    if (!out) throw IoError("CSV write failure", "<stream>", 0);
}

std::vector<SpeedupRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw ArgumentError("missing or mismatched CSV header");
    std::vector<SpeedupRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 14)
            throw ArgumentError("expected 14 CSV fields on line " +
                                std::to_string(line_no) + ", got " +
                                std::to_string(f.size()));
        SpeedupRow r;
        r.spectrum = f[0];
        r.m = static_cast<std::size_t>(std::stoull(f[1]));
        r.n = static_cast<std::size_t>(std::stoull(f[2]));
        r.k_fraction = parse_double(f[3], line_no);
        r.k = static_cast<std::size_t>(std::stoull(f[4]));
        r.competitor_name = f[5];
        r.mean_competitor_s = parse_double(f[6], line_no);
        r.std_competitor_s = parse_double(f[7], line_no);
        r.mean_ours_s = parse_double(f[8], line_no);
        r.std_ours_s = parse_double(f[9], line_no);
        r.ratio = parse_double(f[10], line_no);
        r.band_lo = parse_double(f[11], line_no);
        if (!f[12].empty()) r.band_hi = parse_double(f[12], line_no);
        r.max_rel_err = parse_double(f[13], line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

GridConfig make_grid(synth::SpectrumKind kind, std::size_t m,
                     std::vector<std::size_t> n_grid, std::size_t power_q) {
    GridConfig g;
    g.kind = kind;
    g.m = m;
    g.n_grid = std::move(n_grid);
    g.k_fractions = {0.01, 0.03, 0.05, 0.10};
    g.base.oversample = 10;
    g.base.power_q = power_q;
    return g;
}

}  // namespace

GridConfig preset(const std::string& name) {
    const std::vector<std::size_t> small{100, 200, 400};
    const std::vector<std::size_t> large{250, 500, 1000, 2000};
    if (name == "fast-small")
        return make_grid(synth::SpectrumKind::fast(), 500, small, 12);
    if (name == "sharp-small")
        return make_grid(synth::SpectrumKind::sharp(2.0), 500, small, 4);
    if (name == "slow-small")
        return make_grid(synth::SpectrumKind::slow(), 500, small, 6);
    if (name == "fast-2000")
        return make_grid(synth::SpectrumKind::fast(), 2000, large, 12);
    if (name == "sharp-2000")
        return make_grid(synth::SpectrumKind::sharp(2.0), 2000, large, 4);
    if (name == "slow-2000")
        return make_grid(synth::SpectrumKind::slow(), 2000, large, 6);
    if (name == "perf-2000") {
        GridConfig g = make_grid(synth::SpectrumKind::fast(), 2000, {2000}, 12);
        g.k_fractions = {0.01};
        return g;
    }
    throw ArgumentError("unknown bench preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"fast-small", "sharp-small", "slow-small", "fast-2000",
            "sharp-2000", "slow-2000",  "perf-2000"};
}

}  // namespace randsvd::bench

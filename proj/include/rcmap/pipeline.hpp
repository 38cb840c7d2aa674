#pragma once

#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rcmap/config.hpp"
#include "rcmap/csv.hpp"
#include "rcmap/mackey_glass.hpp"
#include "rcmap/metrics.hpp"
#include "rcmap/models.hpp"
#include "rcmap/prediction.hpp"

namespace rcmap {

// Materialize the configured input signal. The seed only enters for random
// signals (sub-stream 3 of the master seed, away from the reservoir's grain
// and warm-up streams).
inline TimeSeries build_signal(const SignalSpec& spec, std::uint64_t seed) {
    switch (spec.kind) {
        case SignalSpec::Kind::random:
            return random_signal(spec.length, spec.low, spec.high, derive_seed(seed, 3));
        case SignalSpec::Kind::mackey_glass: {
            TimeSeries series = mackey_glass(spec.mg);
            if (spec.discard >= series.size())
                throw std::invalid_argument("signal.discard drops every sample (discard=" +
                                            std::to_string(spec.discard) + ", samples=" +
                                            std::to_string(series.size()) + ")");
            std::vector<double> kept(series.values.begin() + static_cast<std::ptrdiff_t>(spec.discard),
                                     series.values.end());
            Provenance prov = series.provenance;
            prov.params["discard"] = std::to_string(spec.discard);
            return TimeSeries(std::move(kept), series.dt, series.time_at(spec.discard), std::move(prov));
        }
        case SignalSpec::Kind::file:
            return read_time_series_csv(spec.path);
    }
    throw std::invalid_argument("build_signal: unknown signal kind");
}

namespace detail {

inline std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

inline void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
}

inline void write_summary_line(std::ofstream& out, const MetricMap& map) {
    double lo = map.values[0], hi = map.values[0], sum = 0.0;
    for (double v : map.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    out << metric_name(map.kind) << "," << format_double(sum / static_cast<double>(map.values.size()))
        << "," << format_double(lo) << "," << format_double(hi) << "\n";
}

inline void write_relax_line(std::ofstream& out, const char* label, const RelaxResult& relax) {
    out << label << ": steps=" << relax.steps << " residual=" << format_double(relax.residual)
        << " converged=" << (relax.converged ? "yes" : "no") << "\n";
}

inline void write_diagnostics(std::ofstream& out, const MetricMap& map) {
    for (const std::string& line : map.diagnostics) out << "  [" << metric_name(map.kind) << "] " << line << "\n";
}

} // namespace detail

// `generate`: write the configured signal and the echoed config.
inline TimeSeries run_generate(const RunConfig& config, const std::string& out_dir) {
    detail::ensure_dir(out_dir);
    const TimeSeries signal = build_signal(config.signal, config.seed);
    write_time_series_csv(detail::join(out_dir, "signal.csv"), signal);
    save_config(detail::join(out_dir, "config.json"), config);
    return signal;
}

// `analyze`: drive the configured reservoir with the configured signal and
// write the three metric maps (CSV + heatmap), the heatmap ranges, a
// summary, and the echoed config.
inline AnalysisResult run_analyze(const RunConfig& config, const std::string& out_dir) {
    detail::ensure_dir(out_dir);
    const TimeSeries signal = build_signal(config.signal, config.seed);
    ReservoirSpec spec = config.reservoir;
    spec.seed = config.seed;
    const std::unique_ptr<Reservoir> reservoir = make_reservoir(spec);

    AnalysisResult result = analyze(signal, *reservoir, config.metrics.k, config.metrics.threshold_distance,
                                    config.metrics.washout);

    result.nonlinearity.write_csv(detail::join(out_dir, "nl.csv"));
    result.memory_capacity.write_csv(detail::join(out_dir, "mc.csv"));
    result.stability.write_csv(detail::join(out_dir, "stability.csv"));
    write_layout_csv(detail::join(out_dir, "layout.csv"), reservoir->layout());
    if (const GrainMap* grains = reservoir->grain_map())
        write_node_values_csv(detail::join(out_dir, "grains.csv"), reservoir->layout(), grains->node_multiplier);

    const std::pair<const MetricMap*, const char*> heatmaps[] = {
        {&result.nonlinearity, "nl.pgm"},
        {&result.memory_capacity, "mc.pgm"},
        {&result.stability, "stability.pgm"},
    };
    std::ofstream ranges(detail::join(out_dir, "heatmap_ranges.csv"), std::ios::binary);
    if (!ranges) throw std::runtime_error("cannot open for writing: heatmap_ranges.csv");
    ranges << "metric,min,max\n";
    for (const auto& [map, filename] : heatmaps) {
        const HeatmapRange range = write_metric_pgm(detail::join(out_dir, filename), *map);
        ranges << metric_name(map->kind) << "," << format_double(range.min) << "," << format_double(range.max)
               << "\n";
    }
    ranges.close();

    std::ofstream summary(detail::join(out_dir, "summary.txt"), std::ios::binary);
    if (!summary) throw std::runtime_error("cannot open for writing: summary.txt");
    summary << "experiment: " << config.experiment << "\n";
    summary << "model: " << model_name(spec.model) << "\n";
    summary << "nodes: " << reservoir->layout().node_count() << "\n";
    summary << "samples: " << signal.size() << "\n";
    summary << "k: " << config.metrics.k << "\n";
    summary << "threshold_distance: " << format_double(config.metrics.threshold_distance) << "\n";
    summary << "washout: " << config.metrics.washout << "\n";
    summary << "metric,mean,min,max\n";
    detail::write_summary_line(summary, result.nonlinearity);
    detail::write_summary_line(summary, result.memory_capacity);
    detail::write_summary_line(summary, result.stability);
    detail::write_relax_line(summary, "initial_relax", result.initial_relax);
    detail::write_relax_line(summary, "final_relax", result.final_relax);
    summary << "diagnostics:\n";
    detail::write_diagnostics(summary, result.nonlinearity);
    detail::write_diagnostics(summary, result.memory_capacity);
    detail::write_diagnostics(summary, result.stability);
    summary.close();

    save_config(detail::join(out_dir, "config.json"), config);
    return result;
}

// The canonical benchmark trio when the config names no variants: uniform
// low gain, uniform high gain, and a low->high gradient, all on the run's
// base reservoir.
inline std::vector<BenchmarkVariant> default_benchmark_variants(const ReservoirSpec& base) {
    std::vector<BenchmarkVariant> variants(3);
    variants[0].name = "low";
    variants[0].reservoir = base;
    variants[0].reservoir.gain = 0.4;
    variants[0].reservoir.gain_gradient.reset();
    variants[1].name = "high";
    variants[1].reservoir = base;
    variants[1].reservoir.gain = 1.5;
    variants[1].reservoir.gain_gradient.reset();
    variants[2].name = "gradient";
    variants[2].reservoir = base;
    variants[2].reservoir.gain_gradient = {0.2, 2.0};
    return variants;
}

// `benchmark`: horizon sweep of the configured reservoir variants on the
// configured signal (min-max normalized to the reservoirs' input range),
// plus the persistence baseline.
inline std::vector<SweepEntry> run_benchmark(const RunConfig& config, const std::string& out_dir) {
    detail::ensure_dir(out_dir);
    const TimeSeries signal = normalize_minmax(build_signal(config.signal, config.seed));

    std::vector<BenchmarkVariant> variants =
        config.task.variants.empty() ? default_benchmark_variants(config.reservoir) : config.task.variants;
    std::vector<SweepRequest> requests;
    requests.reserve(variants.size());
    for (BenchmarkVariant& variant : variants) {
        variant.reservoir.seed = config.seed;
        requests.push_back(SweepRequest{variant.name, variant.reservoir});
    }

    const std::vector<SweepEntry> table =
        horizon_sweep(requests, signal, config.task.k_max, config.metrics.washout);

    std::ofstream csv(detail::join(out_dir, "mse_vs_k.csv"), std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open for writing: mse_vs_k.csv");
    csv << "model,k,mse,baseline_mse\n";
    for (const SweepEntry& row : table)
        csv << row.model << "," << row.k << "," << format_double(row.mse) << ","
            << format_double(row.baseline_mse) << "\n";
    csv.close();

    std::ofstream summary(detail::join(out_dir, "summary.txt"), std::ios::binary);
    if (!summary) throw std::runtime_error("cannot open for writing: summary.txt");
    summary << "experiment: " << config.experiment << "\n";
    summary << "samples: " << signal.size() << "\n";
    summary << "k_max: " << config.task.k_max << "\n";
    summary << "washout: " << config.metrics.washout << "\n";
    summary << "model,mse_at_k1,baseline_at_k1,min_mse,max_mse\n";
    for (const SweepRequest& request : requests) {
        double at_k1 = 0.0, base_k1 = 0.0;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const SweepEntry& row : table) {
            if (row.model != request.name) continue;
            if (row.k == 1) {
                at_k1 = row.mse;
                base_k1 = row.baseline_mse;
            }
            lo = std::min(lo, row.mse);
            hi = std::max(hi, row.mse);
        }
        summary << request.name << "," << format_double(at_k1) << "," << format_double(base_k1) << ","
                << format_double(lo) << "," << format_double(hi) << "\n";
    }
    // reported, not asserted: best-case edge of the gradient variant over
    // the better uniform variant at each horizon
    const auto find_mse = [&table](const std::string& model, std::size_t k) {
        for (const SweepEntry& row : table)
            if (row.model == model && row.k == k) return row.mse;
        return std::numeric_limits<double>::quiet_NaN();
    };
    bool trio = true;
    for (const char* name : {"low", "high", "gradient"}) {
        bool found = false;
        for (const SweepRequest& request : requests) found = found || request.name == name;
        trio = trio && found;
    }
    if (trio) {
        double best_edge = std::numeric_limits<double>::infinity();
        std::size_t best_k = 1;
        for (std::size_t k = 1; k <= config.task.k_max; ++k) {
            const double edge =
                find_mse("gradient", k) - std::min(find_mse("low", k), find_mse("high", k));
            if (edge < best_edge) {
                best_edge = edge;
                best_k = k;
            }
        }
        summary << "gradient_vs_uniform_best_edge: " << format_double(best_edge) << " at k=" << best_k
                << " (negative means the gradient variant led)\n";
    }
    summary.close();

    save_config(detail::join(out_dir, "config.json"), config);
    return table;
}

} // namespace rcmap

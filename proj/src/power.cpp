#include "catapt/power.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>

#include "catapt/contingency.hpp"
#include "catapt/error.hpp"
#include "catapt/format.hpp"

namespace catapt {

namespace {

// type-7 interpolated quantile of a sorted sample
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double w = h - static_cast<double>(lo);
    return sorted[lo] * (1.0 - w) + sorted[hi] * w;
}

} // namespace

PowerCurve power_curve(const ResponseDataset& dataset, const std::vector<int>& sizes,
                       const SeedSpec& seed, const PowerOptions& options) {
    const int panel = dataset.panel_size();
    if (sizes.empty()) raise(errc::size_out_of_range, "power_curve: no sizes given");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 2 || sizes[i] > panel)
            raise(errc::size_out_of_range, "power_curve: size " + std::to_string(sizes[i]) +
                                               " outside [2, " + std::to_string(panel) + "]");
        if (i > 0 && sizes[i] <= sizes[i - 1])
            raise(errc::size_out_of_range, "power_curve: sizes must be strictly increasing");
    }
    if (options.draws < 1) raise(errc::domain_error, "power_curve: draws must be >= 1");

    PowerCurve curve;
    curve.sizes = sizes;
    curve.draws_per_size = options.draws;
    curve.threshold = options.threshold;
    curve.summary = options.summary;
    const int S = static_cast<int>(sizes.size());
    curve.p_samples.assign(S, std::vector<double>(options.draws, 1.0));
    curve.degenerate_draws.assign(S, 0);

    const SeedSpec stream = seed.with_label(seed.stream_label.empty() ? "power" : seed.stream_label);
    std::vector<std::vector<int>> degenerate_flags(S, std::vector<int>(options.draws, 0));

    parallel_for(S * options.draws, options.n_threads, [&](int cell) {
        const int si = cell / options.draws;
        const int draw = cell % options.draws;
        const auto ids =
            subsample_without_replacement(panel, sizes[si], stream, static_cast<std::uint64_t>(cell));
        const std::set<int> subset(ids.begin(), ids.end());
        double p = 1.0;
        try {
            const auto table = build_contingency(dataset, subset);
            p = chi2_independence(table).p_value;
        } catch (const Error& e) {
            if (!e.is_degeneracy()) throw;
            // degenerate subsample: score p = 1 and count it, keeping the
            // draw design intact
            degenerate_flags[si][draw] = 1;
        }
        curve.p_samples[si][draw] = p;
    });

    for (int si = 0; si < S; ++si) {
        const auto& ps = curve.p_samples[si];
        curve.degenerate_draws[si] = std::accumulate(degenerate_flags[si].begin(),
                                                     degenerate_flags[si].end(), 0);
        double sum = 0.0;
        for (double p : ps) sum += p;
        curve.mean_p.push_back(sum / static_cast<double>(ps.size()));
        std::vector<double> sorted = ps;
        std::sort(sorted.begin(), sorted.end());
        curve.median_p.push_back(quantile_sorted(sorted, 0.5));
        curve.q10_p.push_back(quantile_sorted(sorted, 0.1));
        curve.q90_p.push_back(quantile_sorted(sorted, 0.9));
    }

    const auto& y = options.summary == PowerSummary::mean ? curve.mean_p : curve.median_p;
    for (int si = 0; si < S; ++si) {
        if (y[si] < options.threshold) {
            if (si == 0) {
                curve.crossing_size = static_cast<double>(sizes[0]);
            } else {
                const double x0 = sizes[si - 1], x1 = sizes[si];
                const double y0 = y[si - 1], y1 = y[si];
                curve.crossing_size = x0 + (options.threshold - y0) * (x1 - x0) / (y1 - y0);
            }
            break;
        }
    }
    return curve;
}

std::vector<int> default_size_grid(int panel, int points) {
    if (panel < 10)
        raise(errc::domain_error, "default_size_grid: panel below 10; pass explicit sizes");
    if (points < 2) raise(errc::domain_error, "default_size_grid: need at least 2 points");
    std::vector<int> grid;
    for (int t = 0; t < points; ++t) {
        const double x = 10.0 + (static_cast<double>(panel) - 10.0) * t / (points - 1);
        const int v = static_cast<int>(std::lround(x));
        if (grid.empty() || v > grid.back()) grid.push_back(v);
    }
    return grid;
}

void write_csv(const PowerCurve& curve, std::ostream& out, char separator) {
    out << "size" << separator << "mean_p" << separator << "median_p" << separator << "q10"
        << separator << "q90" << separator << "degenerate_draws" << '\n';
    for (std::size_t i = 0; i < curve.sizes.size(); ++i) {
        out << curve.sizes[i] << separator << format_general(curve.mean_p[i]) << separator
            << format_general(curve.median_p[i]) << separator << format_general(curve.q10_p[i])
            << separator << format_general(curve.q90_p[i]) << separator
            << curve.degenerate_draws[i] << '\n';
    }
}

} // namespace catapt

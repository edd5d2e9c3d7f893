#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "catapt/dataset.hpp"
#include "catapt/rng.hpp"

namespace catapt {

enum class PowerSummary { mean, median };

// p-value of the product/attribute independence test as a function of panel
// size, estimated by repeated panelist subsampling.
struct PowerCurve {
    std::vector<int> sizes;
    int draws_per_size = 0;
    std::vector<std::vector<double>> p_samples; // [size][draw]
    std::vector<double> mean_p, median_p, q10_p, q90_p;
    std::vector<int> degenerate_draws; // draws scored p = 1 because the table degenerated
    std::optional<double> crossing_size;
    double threshold = 0.05;
    PowerSummary summary = PowerSummary::mean;
};

struct PowerOptions {
    int draws = 300;
    double threshold = 0.05;
    PowerSummary summary = PowerSummary::mean;
    int n_threads = 1;
};

PowerCurve power_curve(const ResponseDataset& dataset, const std::vector<int>& sizes,
                       const SeedSpec& seed, const PowerOptions& options = {});

// `points` approximately equally spaced panel sizes from 10 to P inclusive,
// strictly increasing after deduplication.
std::vector<int> default_size_grid(int panel, int points = 12);

void write_csv(const PowerCurve& curve, std::ostream& out, char separator = ';');

} // namespace catapt

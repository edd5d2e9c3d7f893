#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "catapt/dataset.hpp"
#include "catapt/rng.hpp"

namespace catapt {

// Parametric panel model: latent intensities plus normal perceptual noise.
// A CATA box is checked when perceived intensity exceeds cata_threshold; an
// APT box when the coded-wine perception exceeds the pivot perception (an
// equal blend of all products, tasted fresh for each comparison) by
// apt_threshold.
struct PerceptionModel {
    std::string name;
    std::vector<std::string> products;
    AttributeList attributes;
    Eigen::MatrixXd intensity; // products x attributes latent means
    double noise_sd = 1.0;
    double cata_threshold = 0.0;
    double apt_threshold = 0.0;
    std::map<std::string, double> hedonic_means; // empty: no hedonic channel
    double hedonic_sd = 1.0;

    void validate() const;
    // unweighted product mean per attribute (the equal-blend pivot)
    Eigen::VectorXd pivot_intensity() const;

    double cata_probability(int product, int attribute) const;
    double apt_probability(int product, int attribute) const;
};

// One row per (product, panelist), product-major. Deterministic given the
// seed and independent of evaluation order.
ResponseDataset simulate_cata(const PerceptionModel& model, int panelists, const SeedSpec& seed);
ResponseDataset simulate_apt(const PerceptionModel& model, int panelists, const SeedSpec& seed);

// Built-in presets: "null" (identical products, sparse citations),
// "paper-shaped" (six presentations incl. a duplicate pair, 17 attributes),
// "paper-shaped-apt" (same intensities through the pivot channel with
// blend-compressed contrast), "strong" (widely separated profiles).
std::vector<std::string> scenario_names();
PerceptionModel scenario(const std::string& name);

// Model files: a key=value parameter file next to a CSV intensity matrix
// ("Product;<attr>;...[;Hedonic]").
PerceptionModel load_model(const std::string& params_path);
void save_model(const PerceptionModel& model, const std::string& params_path,
                const std::string& intensity_csv_path);

} // namespace catapt

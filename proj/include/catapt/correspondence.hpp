#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "catapt/contingency.hpp"
#include "catapt/rng.hpp"

namespace catapt {

// Correspondence analysis of a contingency table. Coordinates are principal
// (mass-standardized singular vectors scaled by singular values); axes are
// ordered by decreasing inertia and sign-fixed so the row coordinate of
// largest magnitude is positive on each axis.
struct CAResult {
    Eigen::VectorXd inertias;    // principal inertias, one per retained axis
    Eigen::VectorXd inertia_pct; // 100 * inertia / total_inertia
    double total_inertia = 0.0;  // sum of inertias = X^2 / n

    Eigen::MatrixXd row_coords; // rows x axes, principal
    Eigen::MatrixXd col_coords; // cols x axes, principal
    Eigen::MatrixXd col_standard_coords; // cols x axes; supplementary projection basis
    Eigen::VectorXd row_masses;
    Eigen::VectorXd col_masses;

    std::vector<std::string> row_labels; // retained (positive-mass) rows
    std::vector<std::string> col_labels;
    std::vector<std::string> dropped_rows; // zero-mass, excluded from the fit
    std::vector<std::string> dropped_cols;

    int axes() const { return static_cast<int>(inertias.size()); }
};

// 95% (or other level) region of a product's bootstrap-replicate cloud on
// axes 1-2. semi_axes/angle describe the same region as `covariance` scaled
// by the chi-square(2) quantile at `level`.
struct ConfidenceEllipse {
    std::string product;
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
    Eigen::Vector2d semi_axes = Eigen::Vector2d::Zero(); // major, minor
    double angle = 0.0;                                  // radians, in [0, pi)
    double level = 0.95;
    int n_replicates = 0;
    int n_skipped = 0; // replicates dropped because the row degenerated
};

CAResult ca(const ContingencyTable& table);

// Transition-formula projection of a count (or profile) vector onto the
// fitted axes; projecting an original table row reproduces its principal
// coordinates.
Eigen::VectorXd project_supplementary_row(const CAResult& result,
                                          const Eigen::VectorXd& row_counts);

struct BootstrapOptions {
    int n_replicates = 500;
    double level = 0.95;
    bool per_row = false; // resample each row independently instead of the whole table
    int n_threads = 1;
};

// Multinomial resampling of the table, supplementary projection of each
// replicate's rows onto axes 1-2 of `result`, and a normal-theory ellipse
// per product from the replicate cloud. Deterministic given the seed,
// independent of n_threads.
std::vector<ConfidenceEllipse> bootstrap_ellipses(const ContingencyTable& table,
                                                  const CAResult& result,
                                                  const SeedSpec& seed,
                                                  const BootstrapOptions& options = {});

// Mean/covariance ellipse of an m x 2 point cloud at the given level.
ConfidenceEllipse ellipse_from_cloud(std::string product, const Eigen::MatrixXd& points,
                                     double level);

bool ellipse_contains(const ConfidenceEllipse& ellipse, const Eigen::Vector2d& point);

} // namespace catapt

#include "catapt/correspondence.hpp"

#include <cmath>
#include <limits>

#include "catapt/error.hpp"

namespace catapt {

namespace {

// chi-square(2) quantile has the closed form -2 ln(1 - p)
double chi2_2_quantile(double level) {
    if (!(level > 0.0 && level < 1.0))
        raise(errc::domain_error, "ellipse level must be in (0,1)");
    return -2.0 * std::log1p(-level);
}

} // namespace

CAResult ca(const ContingencyTable& table) {
    const int I = table.rows();
    const int J = table.cols();

    std::vector<int> live_rows, live_cols;
    CAResult result;
    for (int i = 0; i < I; ++i) {
        if (table.row_totals(i) > 0) live_rows.push_back(i);
        else result.dropped_rows.push_back(table.row_labels[i]);
    }
    for (int j = 0; j < J; ++j) {
        if (table.col_totals(j) > 0) live_cols.push_back(j);
        else result.dropped_cols.push_back(table.col_labels[j]);
    }
    const int R = static_cast<int>(live_rows.size());
    const int C = static_cast<int>(live_cols.size());
    if (R < 2 || C < 2)
        raise(errc::degenerate_table, "ca: need at least 2 rows and 2 columns with positive mass");

    Eigen::MatrixXd N(R, C);
    for (int a = 0; a < R; ++a)
        for (int b = 0; b < C; ++b) N(a, b) = table.counts(live_rows[a], live_cols[b]);
    const double n = N.sum();

    const Eigen::MatrixXd P = N / n;
    const Eigen::VectorXd r = P.rowwise().sum();
    const Eigen::VectorXd c = P.colwise().sum();
    const Eigen::VectorXd r_isqrt = r.array().rsqrt();
    const Eigen::VectorXd c_isqrt = c.array().rsqrt();

    // standardized residuals S = Dr^{-1/2} (P - r c^T) Dc^{-1/2}
    const Eigen::MatrixXd S =
        r_isqrt.asDiagonal() * (P - r * c.transpose()) * c_isqrt.asDiagonal();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sigma = svd.singularValues();

    // rank cut: axes carrying numerically zero inertia are discarded
    const double tol = std::max(R, C) * 1e-12 * (sigma.size() > 0 ? sigma(0) : 0.0);
    int K = 0;
    while (K < sigma.size() && sigma(K) > std::max(tol, 1e-14)) ++K;

    result.row_masses = r;
    result.col_masses = c;
    for (int a = 0; a < R; ++a) result.row_labels.push_back(table.row_labels[live_rows[a]]);
    for (int b = 0; b < C; ++b) result.col_labels.push_back(table.col_labels[live_cols[b]]);

    result.inertias = Eigen::VectorXd(K);
    for (int k = 0; k < K; ++k) result.inertias(k) = sigma(k) * sigma(k);
    result.total_inertia = result.inertias.sum();

    result.row_coords = Eigen::MatrixXd::Zero(R, K);
    result.col_coords = Eigen::MatrixXd::Zero(C, K);
    result.col_standard_coords = Eigen::MatrixXd::Zero(C, K);
    result.inertia_pct = Eigen::VectorXd::Zero(K);
    if (K == 0) return result; // independence table: zero axes, zero inertia

    Eigen::MatrixXd F = r_isqrt.asDiagonal() * svd.matrixU().leftCols(K) * sigma.head(K).asDiagonal();
    Eigen::MatrixXd Gs = c_isqrt.asDiagonal() * svd.matrixV().leftCols(K);

    // SVD sign is arbitrary; make the largest-|coordinate| row positive per
    // axis (first index wins ties) so output is deterministic.
    for (int k = 0; k < K; ++k) {
        int arg = 0;
        double best = -1.0;
        for (int a = 0; a < R; ++a) {
            const double v = std::abs(F(a, k));
            if (v > best) {
                best = v;
                arg = a;
            }
        }
        if (F(arg, k) < 0.0) {
            F.col(k) = -F.col(k);
            Gs.col(k) = -Gs.col(k);
        }
    }

    result.row_coords = F;
    result.col_standard_coords = Gs;
    result.col_coords = Gs * sigma.head(K).asDiagonal();
    result.inertia_pct = result.inertias * (100.0 / result.total_inertia);
    return result;
}

Eigen::VectorXd project_supplementary_row(const CAResult& result,
                                          const Eigen::VectorXd& row_counts) {
    if (row_counts.size() != result.col_standard_coords.rows())
        raise(errc::domain_error, "project_supplementary_row: length must match column count");
    if ((row_counts.array() < 0.0).any())
        raise(errc::zero_row, "project_supplementary_row: negative counts");
    const double total = row_counts.sum();
    if (!(total > 0.0))
        raise(errc::zero_row, "project_supplementary_row: zero row");
    const Eigen::VectorXd profile = row_counts / total;
    return result.col_standard_coords.transpose() * profile;
}

ConfidenceEllipse ellipse_from_cloud(std::string product, const Eigen::MatrixXd& points,
                                     double level) {
    if (points.cols() != 2) raise(errc::domain_error, "ellipse_from_cloud: points must be m x 2");
    const int m = static_cast<int>(points.rows());
    if (m < 2) raise(errc::domain_error, "ellipse_from_cloud: need at least 2 points");

    ConfidenceEllipse e;
    e.product = std::move(product);
    e.level = level;
    e.n_replicates = m;
    e.center = points.colwise().mean();
    const Eigen::MatrixXd centered = points.rowwise() - e.center.transpose();
    e.covariance = (centered.transpose() * centered) / static_cast<double>(m - 1);

    const double quantile = chi2_2_quantile(level);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(e.covariance);
    // eigenvalues ascending; guard tiny negatives from roundoff
    const double minor_var = std::max(0.0, eig.eigenvalues()(0));
    const double major_var = std::max(0.0, eig.eigenvalues()(1));
    e.semi_axes(0) = std::sqrt(major_var * quantile);
    e.semi_axes(1) = std::sqrt(minor_var * quantile);
    const Eigen::Vector2d major = eig.eigenvectors().col(1);
    double angle = std::atan2(major(1), major(0));
    if (angle < 0.0) angle += 3.14159265358979323846;
    if (angle >= 3.14159265358979323846) angle -= 3.14159265358979323846;
    e.angle = angle;
    return e;
}

bool ellipse_contains(const ConfidenceEllipse& ellipse, const Eigen::Vector2d& point) {
    const Eigen::Vector2d d = point - ellipse.center;
    const double det = ellipse.covariance.determinant();
    if (det <= 0.0) return d.norm() == 0.0; // degenerate cloud
    const double quantile = -2.0 * std::log1p(-ellipse.level);
    const double md2 = d.dot(ellipse.covariance.inverse() * d);
    return md2 <= quantile;
}

std::vector<ConfidenceEllipse> bootstrap_ellipses(const ContingencyTable& table,
                                                  const CAResult& result,
                                                  const SeedSpec& seed,
                                                  const BootstrapOptions& options) {
    if (options.n_replicates < 10)
        raise(errc::domain_error, "bootstrap_ellipses: need at least 10 replicates");
    if (result.axes() < 2)
        raise(errc::degenerate_table, "bootstrap_ellipses: result has fewer than 2 axes");

    // replicates are resampled from the retained (positive-mass) table
    const int R = static_cast<int>(result.row_labels.size());
    const int C = static_cast<int>(result.col_labels.size());
    Eigen::MatrixXd N(R, C);
    {
        std::vector<int> live_rows, live_cols;
        for (int i = 0; i < table.rows(); ++i)
            if (table.row_totals(i) > 0) live_rows.push_back(i);
        for (int j = 0; j < table.cols(); ++j)
            if (table.col_totals(j) > 0) live_cols.push_back(j);
        for (int a = 0; a < R; ++a)
            for (int b = 0; b < C; ++b) N(a, b) = table.counts(live_rows[a], live_cols[b]);
    }
    const double n = N.sum();
    const long n_long = static_cast<long>(n);

    // flattened cell probabilities, row-major
    std::vector<double> cell_probs(static_cast<std::size_t>(R) * C);
    for (int a = 0; a < R; ++a)
        for (int b = 0; b < C; ++b) cell_probs[a * C + b] = N(a, b) / n;
    // per-row profiles for the per-row variant
    std::vector<std::vector<double>> row_probs(R, std::vector<double>(C));
    std::vector<long> row_totals(R);
    for (int a = 0; a < R; ++a) {
        const double rt = N.row(a).sum();
        row_totals[a] = static_cast<long>(rt);
        for (int b = 0; b < C; ++b) row_probs[a][b] = N(a, b) / rt;
    }

    const Eigen::MatrixXd basis = result.col_standard_coords.leftCols(2);

    const int B = options.n_replicates;
    // replicate r stores one (x, y) per product, or NaN when the row degenerated
    Eigen::MatrixXd cloud_x(B, R), cloud_y(B, R);
    const SeedSpec stream = seed.with_label(seed.stream_label.empty() ? "ellipse" : seed.stream_label);

    parallel_for(B, options.n_threads, [&](int rep) {
        Rng rng(stream, static_cast<std::uint64_t>(rep));
        Eigen::MatrixXd T(R, C);
        if (options.per_row) {
            for (int a = 0; a < R; ++a) {
                const auto counts = multinomial_sample(row_totals[a], row_probs[a], rng);
                for (int b = 0; b < C; ++b) T(a, b) = static_cast<double>(counts[b]);
            }
        } else {
            const auto counts = multinomial_sample(n_long, cell_probs, rng);
            for (int a = 0; a < R; ++a)
                for (int b = 0; b < C; ++b) T(a, b) = static_cast<double>(counts[a * C + b]);
        }
        for (int a = 0; a < R; ++a) {
            const double rt = T.row(a).sum();
            if (rt <= 0.0) {
                cloud_x(rep, a) = std::numeric_limits<double>::quiet_NaN();
                cloud_y(rep, a) = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            const Eigen::VectorXd profile = T.row(a).transpose() / rt;
            const Eigen::Vector2d f = basis.transpose() * profile;
            cloud_x(rep, a) = f(0);
            cloud_y(rep, a) = f(1);
        }
    });

    std::vector<ConfidenceEllipse> ellipses;
    ellipses.reserve(R);
    for (int a = 0; a < R; ++a) {
        Eigen::MatrixXd pts(B, 2);
        int kept = 0;
        for (int rep = 0; rep < B; ++rep) {
            if (std::isnan(cloud_x(rep, a))) continue;
            pts(kept, 0) = cloud_x(rep, a);
            pts(kept, 1) = cloud_y(rep, a);
            ++kept;
        }
        if (kept < 2)
            raise(errc::degenerate_table,
                  "bootstrap_ellipses: too few usable replicates for " + result.row_labels[a]);
        ConfidenceEllipse e =
            ellipse_from_cloud(result.row_labels[a], pts.topRows(kept), options.level);
        e.n_skipped = B - kept;
        ellipses.push_back(std::move(e));
    }
    return ellipses;
}

} // namespace catapt

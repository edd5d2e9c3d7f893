#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "catapt/dataset.hpp"

namespace catapt {

struct AnovaResult {
    std::vector<std::string> group_labels;
    Eigen::VectorXd group_means;
    std::vector<int> group_ns;
    double ss_between = 0.0;
    double ss_within = 0.0;
    int df_between = 0;
    int df_within = 0;
    double f_statistic = 0.0;
    double p_value = 1.0;
    // within-group variance exactly zero; p is 0 when means differ, 1 when
    // all scores are identical
    bool zero_within_variance = false;

    double mean_square_within() const {
        return df_within > 0 ? ss_within / df_within : 0.0;
    }
    // per-group standard error of the mean, from the pooled variance
    double standard_error(int group) const;
};

struct TukeyPair {
    std::string group_a;
    std::string group_b;
    double mean_diff = 0.0;   // mean_a - mean_b
    double q_statistic = 0.0; // Tukey-Kramer studentized range statistic
    double p_adjusted = 1.0;
    bool significant = false;
};

struct TukeyResult {
    std::vector<TukeyPair> pairs;
    std::map<std::string, std::string> letters; // compact letter display
    double alpha = 0.05;
};

// One-way ANOVA of hedonic scores grouped by product.
AnovaResult anova(const ResponseDataset& dataset);
AnovaResult anova_groups(const std::vector<std::string>& labels,
                         const std::vector<std::vector<double>>& scores);

// All-pairs Tukey HSD (Tukey-Kramer for unequal sizes) with a compact
// letter display computed by insert-and-absorb over the significance
// matrix; groups sharing a letter are not significantly different.
TukeyResult tukey_hsd(const AnovaResult& anova, double alpha = 0.05);

void write_pairs_csv(const TukeyResult& tukey, std::ostream& out, char separator = ';');
void write_letters_csv(const TukeyResult& tukey, const AnovaResult& anova, std::ostream& out,
                       char separator = ';');

} // namespace catapt

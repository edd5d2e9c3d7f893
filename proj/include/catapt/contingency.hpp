#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "catapt/dataset.hpp"

namespace catapt {

// Product x attribute citation counts with margins.
struct ContingencyTable {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Eigen::MatrixXi counts;

    Eigen::VectorXi row_totals;
    Eigen::VectorXi col_totals;
    long grand_total = 0;

    static ContingencyTable from_counts(std::vector<std::string> row_labels,
                                        std::vector<std::string> col_labels,
                                        Eigen::MatrixXi counts);

    int rows() const { return static_cast<int>(counts.rows()); }
    int cols() const { return static_cast<int>(counts.cols()); }
};

struct Chi2Result {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    Eigen::MatrixXd expected; // full table dims; zero-margin cells hold 0
    double low_expected_fraction = 0.0;
    // zero-margin rows/columns are dropped from the statistic and from df
    std::vector<std::string> dropped_rows;
    std::vector<std::string> dropped_cols;
};

// counts[i][j] = number of panelists (within the subset, when given) citing
// attribute j for product i. Row order is first-appearance product order;
// column order is the attribute order.
ContingencyTable build_contingency(const ResponseDataset& dataset,
                                   const std::optional<std::set<int>>& panelist_subset = {});

// Pearson chi-square test of independence. Zero-margin rows/columns are
// excluded from both the statistic and the degrees of freedom and reported
// in the result; fewer than 2 nonzero rows or columns is DegenerateTable.
Chi2Result chi2_independence(const ContingencyTable& table);

void write_csv(const ContingencyTable& table, std::ostream& out, char separator = ';');

} // namespace catapt

#include "catapt/contingency.hpp"

#include <map>
#include <ostream>

#include "catapt/error.hpp"
#include "catapt/numeric.hpp"

namespace catapt {

ContingencyTable ContingencyTable::from_counts(std::vector<std::string> row_labels,
                                               std::vector<std::string> col_labels,
                                               Eigen::MatrixXi counts) {
    if (static_cast<int>(row_labels.size()) != counts.rows() ||
        static_cast<int>(col_labels.size()) != counts.cols())
        raise(errc::domain_error, "contingency: label/matrix dimension mismatch");
    if ((counts.array() < 0).any())
        raise(errc::domain_error, "contingency: counts must be non-negative");
    ContingencyTable t;
    t.row_labels = std::move(row_labels);
    t.col_labels = std::move(col_labels);
    t.counts = std::move(counts);
    t.row_totals = t.counts.rowwise().sum();
    t.col_totals = t.counts.colwise().sum();
    t.grand_total = t.counts.cast<long>().sum();
    if (t.grand_total <= 0) raise(errc::empty_selection, "contingency: grand total is zero");
    return t;
}

ContingencyTable build_contingency(const ResponseDataset& dataset,
                                   const std::optional<std::set<int>>& panelist_subset) {
    const auto& products = dataset.products();
    const int n_rows = static_cast<int>(products.size());
    const int n_cols = static_cast<int>(dataset.attributes.size());
    if (n_rows == 0) raise(errc::empty_selection, "build_contingency: dataset has no rows");

    std::map<std::string, int> row_index;
    for (int i = 0; i < n_rows; ++i) row_index[products[i]] = i;

    Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(n_rows, n_cols);
    for (const auto& row : dataset.rows) {
        if (panelist_subset && !panelist_subset->count(row.panelist)) continue;
        const int i = row_index.at(row.product);
        for (int j = 0; j < n_cols; ++j) counts(i, j) += row.citations[j];
    }
    if (counts.cast<long>().sum() == 0)
        raise(errc::empty_selection, "build_contingency: selection has no citations");
    return ContingencyTable::from_counts(products, dataset.attributes.names, std::move(counts));
}

Chi2Result chi2_independence(const ContingencyTable& table) {
    const int I = table.rows();
    const int J = table.cols();

    std::vector<int> live_rows, live_cols;
    Chi2Result result;
    for (int i = 0; i < I; ++i) {
        if (table.row_totals(i) > 0) live_rows.push_back(i);
        else result.dropped_rows.push_back(table.row_labels[i]);
    }
    for (int j = 0; j < J; ++j) {
        if (table.col_totals(j) > 0) live_cols.push_back(j);
        else result.dropped_cols.push_back(table.col_labels[j]);
    }
    if (live_rows.size() < 2 || live_cols.size() < 2)
        raise(errc::degenerate_table,
              "chi2_independence: need at least 2 nonzero rows and 2 nonzero columns");

    const double n = static_cast<double>(table.grand_total);
    result.expected = Eigen::MatrixXd::Zero(I, J);
    double statistic = 0.0;
    long low_cells = 0;
    for (int i : live_rows) {
        for (int j : live_cols) {
            const double e = static_cast<double>(table.row_totals(i)) *
                             static_cast<double>(table.col_totals(j)) / n;
            result.expected(i, j) = e;
            const double d = table.counts(i, j) - e;
            statistic += d * d / e;
            if (e < 5.0) ++low_cells;
        }
    }
    result.statistic = statistic;
    result.df = static_cast<int>((live_rows.size() - 1) * (live_cols.size() - 1));
    result.p_value = chi2_sf(statistic, result.df);
    result.low_expected_fraction =
        static_cast<double>(low_cells) / static_cast<double>(live_rows.size() * live_cols.size());
    return result;
}

void write_csv(const ContingencyTable& table, std::ostream& out, char separator) {
    out << "Product";
    for (const auto& c : table.col_labels) out << separator << c;
    out << separator << "Total" << '\n';
    for (int i = 0; i < table.rows(); ++i) {
        out << table.row_labels[i];
        for (int j = 0; j < table.cols(); ++j) out << separator << table.counts(i, j);
        out << separator << table.row_totals(i) << '\n';
    }
    out << "Total";
    for (int j = 0; j < table.cols(); ++j) out << separator << table.col_totals(j);
    out << separator << table.grand_total << '\n';
}

} // namespace catapt

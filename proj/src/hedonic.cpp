#include "catapt/hedonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "catapt/error.hpp"
#include "catapt/format.hpp"
#include "catapt/numeric.hpp"

namespace catapt {

double AnovaResult::standard_error(int group) const {
    if (group < 0 || group >= static_cast<int>(group_ns.size()))
        raise(errc::domain_error, "standard_error: bad group index");
    if (group_ns[group] < 1) return 0.0;
    return std::sqrt(mean_square_within() / group_ns[group]);
}

AnovaResult anova_groups(const std::vector<std::string>& labels,
                         const std::vector<std::vector<double>>& scores) {
    if (labels.size() != scores.size())
        raise(errc::domain_error, "anova_groups: labels/scores size mismatch");
    if (labels.size() < 2) raise(errc::single_group, "anova needs at least 2 groups");

    AnovaResult result;
    result.group_labels = labels;
    result.group_ns.reserve(labels.size());
    result.group_means = Eigen::VectorXd(labels.size());

    long total_n = 0;
    double grand_sum = 0.0;
    for (std::size_t g = 0; g < scores.size(); ++g) {
        if (scores[g].size() < 2)
            raise(errc::missing_scores,
                  "group " + labels[g] + " needs at least 2 hedonic scores");
        result.group_ns.push_back(static_cast<int>(scores[g].size()));
        const double sum = std::accumulate(scores[g].begin(), scores[g].end(), 0.0);
        result.group_means(g) = sum / scores[g].size();
        grand_sum += sum;
        total_n += scores[g].size();
    }
    const double grand_mean = grand_sum / total_n;

    for (std::size_t g = 0; g < scores.size(); ++g) {
        const double d = result.group_means(g) - grand_mean;
        result.ss_between += scores[g].size() * d * d;
        for (double x : scores[g]) {
            const double w = x - result.group_means(g);
            result.ss_within += w * w;
        }
    }
    result.df_between = static_cast<int>(labels.size()) - 1;
    result.df_within = static_cast<int>(total_n - labels.size());

    if (result.ss_within == 0.0) {
        result.zero_within_variance = true;
        const bool means_differ = result.ss_between > 0.0;
        result.f_statistic = means_differ ? std::numeric_limits<double>::infinity() : 0.0;
        result.p_value = means_differ ? 0.0 : 1.0;
        return result;
    }
    result.f_statistic = (result.ss_between / result.df_between) /
                         (result.ss_within / result.df_within);
    result.p_value = f_sf(result.f_statistic, result.df_between, result.df_within);
    return result;
}

AnovaResult anova(const ResponseDataset& dataset) {
    const auto& products = dataset.products();
    std::vector<std::vector<double>> scores(products.size());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < products.size(); ++i) index[products[i]] = i;
    for (const auto& row : dataset.rows) {
        if (row.hedonic) scores[index[row.product]].push_back(static_cast<double>(*row.hedonic));
    }
    for (std::size_t i = 0; i < products.size(); ++i) {
        if (scores[i].empty())
            raise(errc::missing_scores, "product " + products[i] + " has no hedonic scores");
    }
    return anova_groups(products, scores);
}

namespace {

// Compact letter display by insert-and-absorb: start from one class holding
// every group, split classes on each significant pair, then drop classes
// that became subsets of another.
std::map<std::string, std::string> compact_letters(const std::vector<std::string>& labels,
                                                   const Eigen::VectorXd& means,
                                                   const std::vector<std::vector<bool>>& sig) {
    const int k = static_cast<int>(labels.size());
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (means(a) != means(b)) return means(a) > means(b);
        return a < b;
    });

    std::vector<std::vector<bool>> classes{std::vector<bool>(k, true)};
    for (int oa = 0; oa < k; ++oa) {
        for (int ob = oa + 1; ob < k; ++ob) {
            const int a = order[oa], b = order[ob];
            if (!sig[a][b]) continue;
            std::vector<std::vector<bool>> next;
            for (const auto& cls : classes) {
                if (cls[a] && cls[b]) {
                    auto without_a = cls, without_b = cls;
                    without_a[a] = false;
                    without_b[b] = false;
                    next.push_back(without_a);
                    next.push_back(without_b);
                } else {
                    next.push_back(cls);
                }
            }
            // absorb: remove classes contained in another
            std::vector<std::vector<bool>> kept;
            for (std::size_t i = 0; i < next.size(); ++i) {
                bool subset = false;
                for (std::size_t j = 0; j < next.size() && !subset; ++j) {
                    if (i == j) continue;
                    bool contained = true, strict = false;
                    for (int g = 0; g < k; ++g) {
                        if (next[i][g] && !next[j][g]) contained = false;
                        if (!next[i][g] && next[j][g]) strict = true;
                    }
                    if (contained && (strict || j < i)) subset = true;
                }
                if (!subset) kept.push_back(next[i]);
            }
            classes = std::move(kept);
        }
    }

    // order classes by the best-ranked member so 'a' goes to the top mean
    std::vector<int> class_rank(classes.size(), k);
    std::vector<int> rank_of(k);
    for (int r = 0; r < k; ++r) rank_of[order[r]] = r;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (int g = 0; g < k; ++g)
            if (classes[c][g]) class_rank[c] = std::min(class_rank[c], rank_of[g]);
    }
    std::vector<std::size_t> class_order(classes.size());
    std::iota(class_order.begin(), class_order.end(), 0u);
    std::sort(class_order.begin(), class_order.end(),
              [&](std::size_t a, std::size_t b) { return class_rank[a] < class_rank[b]; });

    std::map<std::string, std::string> letters;
    for (int g = 0; g < k; ++g) letters[labels[g]] = "";
    for (std::size_t pos = 0; pos < class_order.size(); ++pos) {
        const char letter = static_cast<char>('a' + (pos % 26));
        for (int g = 0; g < k; ++g)
            if (classes[class_order[pos]][g]) letters[labels[g]].push_back(letter);
    }
    return letters;
}

} // namespace

TukeyResult tukey_hsd(const AnovaResult& anova, double alpha) {
    const int k = static_cast<int>(anova.group_labels.size());
    if (k < 2) raise(errc::single_group, "tukey_hsd: need at least 2 groups");
    if (anova.df_within < 1) raise(errc::domain_error, "tukey_hsd: df_within must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) raise(errc::domain_error, "tukey_hsd: alpha in (0,1)");

    TukeyResult result;
    result.alpha = alpha;
    const double msw = anova.mean_square_within();
    std::vector<std::vector<bool>> sig(k, std::vector<bool>(k, false));

    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            TukeyPair pair;
            pair.group_a = anova.group_labels[a];
            pair.group_b = anova.group_labels[b];
            pair.mean_diff = anova.group_means(a) - anova.group_means(b);
            if (anova.zero_within_variance) {
                // propagate the flagged state: identical scores are a tie,
                // any mean gap is infinitely significant
                const bool differ = pair.mean_diff != 0.0;
                pair.q_statistic = differ ? std::numeric_limits<double>::infinity() : 0.0;
                pair.p_adjusted = differ ? 0.0 : 1.0;
            } else {
                const double se = std::sqrt(
                    0.5 * msw * (1.0 / anova.group_ns[a] + 1.0 / anova.group_ns[b]));
                pair.q_statistic = std::abs(pair.mean_diff) / se;
                pair.p_adjusted = studentized_range_sf(pair.q_statistic, k, anova.df_within);
            }
            pair.significant = pair.p_adjusted < alpha;
            sig[a][b] = sig[b][a] = pair.significant;
            result.pairs.push_back(std::move(pair));
        }
    }
    result.letters = compact_letters(anova.group_labels, anova.group_means, sig);
    return result;
}

void write_pairs_csv(const TukeyResult& tukey, std::ostream& out, char separator) {
    out << "group_a" << separator << "group_b" << separator << "mean_diff" << separator << "q"
        << separator << "p_adjusted" << separator << "significant" << '\n';
    for (const auto& p : tukey.pairs) {
        out << p.group_a << separator << p.group_b << separator << format_general(p.mean_diff)
            << separator << format_general(p.q_statistic) << separator
            << format_general(p.p_adjusted) << separator << (p.significant ? 1 : 0) << '\n';
    }
}

void write_letters_csv(const TukeyResult& tukey, const AnovaResult& anova, std::ostream& out,
                       char separator) {
    out << "group" << separator << "mean" << separator << "n" << separator << "se" << separator
        << "letters" << '\n';
    for (std::size_t g = 0; g < anova.group_labels.size(); ++g) {
        out << anova.group_labels[g] << separator << format_general(anova.group_means(g))
            << separator << anova.group_ns[g] << separator
            << format_general(anova.standard_error(static_cast<int>(g))) << separator
            << tukey.letters.at(anova.group_labels[g]) << '\n';
    }
}

} // namespace catapt

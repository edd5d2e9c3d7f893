#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace catapt {

enum class Method { CATA, APT, Unknown };

// Ordered list of attribute labels; the order is canonical for every
// downstream matrix (contingency columns, CA columns, questionnaires).
struct AttributeList {
    std::vector<std::string> names;

    AttributeList() = default;
    explicit AttributeList(std::vector<std::string> labels);

    std::size_t size() const { return names.size(); }
    int index_of(const std::string& name) const; // -1 when absent
};

// One questionnaire line: a product presentation judged by one panelist.
// citations[j] is 1 when the box for attribute j was checked. For APT data
// an unchecked box means "less than or similar to the pivot" and still
// encodes as 0.
struct ResponseRow {
    std::string product;
    int panelist = 0;
    std::vector<int> citations;
    std::optional<int> hedonic; // 1..9 when present
};

struct ValidationReport {
    struct MissingPair {
        std::string product;
        int panelist;
    };
    std::vector<MissingPair> missing_pairs;
    std::vector<std::string> zero_mass_attributes; // never cited anywhere
    std::vector<std::string> zero_citation_products;

    bool empty() const {
        return missing_pairs.empty() && zero_mass_attributes.empty() &&
               zero_citation_products.empty();
    }
};

// Long-format panel responses. Immutable after construction; `create`
// enforces the type invariants (unique (product, panelist) pairs, panelist
// ids forming {1..P}, citation vectors aligned with the attribute list).
struct ResponseDataset {
    AttributeList attributes;
    std::vector<ResponseRow> rows;
    Method method_tag = Method::Unknown;

    static ResponseDataset create(AttributeList attributes, std::vector<ResponseRow> rows,
                                  Method method = Method::Unknown);

    // product labels in first-appearance order
    const std::vector<std::string>& products() const { return products_; }
    int panel_size() const { return panel_size_; }
    bool has_hedonic() const;

  private:
    std::vector<std::string> products_;
    int panel_size_ = 0;
};

struct ParseOptions {
    char separator = ';';
    std::string hedonic_column = "Score";
};

// CSV contract: header "Product<sep>NumPanel<sep><attributes...>" with an
// optional trailing hedonic column; citation cells are exactly "0" or "1";
// CRLF and LF both accepted.
ResponseDataset parse_csv(std::istream& in, const ParseOptions& options = {});
ResponseDataset parse_csv_file(const std::string& path, const ParseOptions& options = {});

// Inverse of parse_csv: LF line endings, stored row order, byte-stable.
void emit_csv(const ResponseDataset& dataset, std::ostream& out, char separator = ';');
std::string emit_csv(const ResponseDataset& dataset, char separator = ';');

ValidationReport validate(const ResponseDataset& dataset);

std::string to_string(Method method);

} // namespace catapt

#include "catapt/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "catapt/error.hpp"

namespace catapt {

AttributeList::AttributeList(std::vector<std::string> labels) : names(std::move(labels)) {
    if (names.size() < 2)
        raise(errc::domain_error, "attribute list needs at least 2 labels");
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) raise(errc::domain_error, "attribute labels must be non-empty");
        if (!seen.insert(n).second)
            raise(errc::domain_error, "duplicate attribute label: " + n);
    }
}

int AttributeList::index_of(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

ResponseDataset ResponseDataset::create(AttributeList attributes, std::vector<ResponseRow> rows,
                                        Method method) {
    if (attributes.names.empty())
        raise(errc::domain_error, "dataset needs an attribute list");
    ResponseDataset d;
    d.attributes = std::move(attributes);
    d.rows = std::move(rows);
    d.method_tag = method;

    std::set<std::pair<std::string, int>> pairs;
    std::set<int> ids;
    for (const auto& row : d.rows) {
        if (row.product.empty())
            raise(errc::invalid_dataset, "empty product label");
        if (row.panelist < 1)
            raise(errc::invalid_dataset, "panelist ids must be positive");
        if (row.citations.size() != d.attributes.size())
            raise(errc::invalid_dataset, "citation vector length mismatch for product " + row.product);
        for (int c : row.citations) {
            if (c != 0 && c != 1)
                raise(errc::non_binary_cell, "citation entries must be 0 or 1");
        }
        if (row.hedonic && (*row.hedonic < 1 || *row.hedonic > 9))
            raise(errc::bad_hedonic, "hedonic score outside 1..9");
        if (!pairs.insert({row.product, row.panelist}).second)
            raise(errc::duplicate_pair,
                  "duplicate (product, panelist) pair: " + row.product + ", " +
                      std::to_string(row.panelist));
        ids.insert(row.panelist);
        if (std::find(d.products_.begin(), d.products_.end(), row.product) == d.products_.end())
            d.products_.push_back(row.product);
    }
    if (!ids.empty()) {
        d.panel_size_ = *ids.rbegin();
        if (static_cast<int>(ids.size()) != d.panel_size_)
            raise(errc::invalid_dataset,
                  "panelist ids must form 1..P without gaps (the NumPanel convention)");
    }
    return d;
}

bool ResponseDataset::has_hedonic() const {
    return std::any_of(rows.begin(), rows.end(),
                       [](const ResponseRow& r) { return r.hedonic.has_value(); });
}

namespace {

std::vector<std::string> split_line(const std::string& line, char sep) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        const long v = std::stol(s, &pos);
        if (pos != s.size()) return false;
        out = static_cast<int>(v);
        return true;
    } catch (...) {
        return false;
    }
}

} // namespace

ResponseDataset parse_csv(std::istream& in, const ParseOptions& options) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back(); // CRLF input
        lines.push_back(line);
    }
    // trailing blank lines are tolerated; interior blank lines are not data
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) raise(errc::malformed_header, "empty input");

    const auto header = split_line(lines[0], options.separator);
    if (header.size() < 2 || header[0] != "Product" || header[1] != "NumPanel")
        raise(errc::malformed_header,
              "first two columns must be named \"Product\" and \"NumPanel\"");

    std::vector<std::string> attr_names(header.begin() + 2, header.end());
    bool has_hedonic_col = false;
    if (!attr_names.empty() && attr_names.back() == options.hedonic_column) {
        has_hedonic_col = true;
        attr_names.pop_back();
    }
    AttributeList attributes(attr_names);

    std::vector<ResponseRow> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto cells = split_line(lines[li], options.separator);
        const std::size_t expected = 2 + attributes.size() + (has_hedonic_col ? 1 : 0);
        if (cells.size() != expected)
            raise(errc::invalid_dataset, "line " + std::to_string(li + 1) + ": expected " +
                                             std::to_string(expected) + " cells, got " +
                                             std::to_string(cells.size()));
        ResponseRow row;
        row.product = cells[0];
        if (row.product.empty())
            raise(errc::invalid_dataset, "line " + std::to_string(li + 1) + ": empty product");
        if (!parse_int(cells[1], row.panelist) || row.panelist < 1)
            raise(errc::invalid_dataset,
                  "line " + std::to_string(li + 1) + ": NumPanel must be a positive integer");
        row.citations.reserve(attributes.size());
        for (std::size_t j = 0; j < attributes.size(); ++j) {
            const std::string& cell = cells[2 + j];
            if (cell == "0") {
                row.citations.push_back(0);
            } else if (cell == "1") {
                row.citations.push_back(1);
            } else {
                raise(errc::non_binary_cell, "line " + std::to_string(li + 1) + ", column \"" +
                                                 attributes.names[j] + "\": cell \"" + cell +
                                                 "\" is not 0 or 1");
            }
        }
        if (has_hedonic_col) {
            const std::string& cell = cells.back();
            if (!cell.empty()) {
                int score = 0;
                if (!parse_int(cell, score) || score < 1 || score > 9)
                    raise(errc::bad_hedonic, "line " + std::to_string(li + 1) +
                                                 ": hedonic score \"" + cell +
                                                 "\" outside 1..9");
                row.hedonic = score;
            }
        }
        rows.push_back(std::move(row));
    }
    return ResponseDataset::create(std::move(attributes), std::move(rows));
}

ResponseDataset parse_csv_file(const std::string& path, const ParseOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::io_error, "cannot open " + path);
    return parse_csv(in, options);
}

void emit_csv(const ResponseDataset& dataset, std::ostream& out, char separator) {
    const bool hedonic = dataset.has_hedonic();
    out << "Product" << separator << "NumPanel";
    for (const auto& a : dataset.attributes.names) out << separator << a;
    if (hedonic) out << separator << "Score";
    out << '\n';
    for (const auto& row : dataset.rows) {
        out << row.product << separator << row.panelist;
        for (int c : row.citations) out << separator << c;
        if (hedonic) {
            out << separator;
            if (row.hedonic) out << *row.hedonic;
        }
        out << '\n';
    }
}

std::string emit_csv(const ResponseDataset& dataset, char separator) {
    std::ostringstream out;
    emit_csv(dataset, out, separator);
    return out.str();
}

ValidationReport validate(const ResponseDataset& dataset) {
    ValidationReport report;
    const int panel = dataset.panel_size();

    std::map<std::string, std::set<int>> seen;
    std::vector<long> column_totals(dataset.attributes.size(), 0);
    std::map<std::string, long> product_totals;
    for (const auto& row : dataset.rows) {
        seen[row.product].insert(row.panelist);
        for (std::size_t j = 0; j < row.citations.size(); ++j)
            column_totals[j] += row.citations[j];
        long& t = product_totals[row.product];
        for (int c : row.citations) t += c;
    }
    for (const auto& product : dataset.products()) {
        const auto& ids = seen[product];
        for (int p = 1; p <= panel; ++p) {
            if (!ids.count(p)) report.missing_pairs.push_back({product, p});
        }
        if (product_totals[product] == 0)
            report.zero_citation_products.push_back(product);
    }
    for (std::size_t j = 0; j < column_totals.size(); ++j) {
        if (column_totals[j] == 0)
            report.zero_mass_attributes.push_back(dataset.attributes.names[j]);
    }
    return report;
}

std::string to_string(Method method) {
    switch (method) {
        case Method::CATA: return "CATA";
        case Method::APT: return "APT";
        default: return "UNKNOWN";
    }
}

} // namespace catapt

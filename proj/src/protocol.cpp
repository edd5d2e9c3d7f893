#include "catapt/protocol.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "catapt/error.hpp"

namespace catapt {

namespace {

std::vector<int> identity_permutation(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// Williams balanced Latin square row for `index` over k items (k even gives
// full first-order carryover balance).
std::vector<int> williams_row(int index, int k) {
    std::vector<int> row(k);
    int left = index % k;
    int right = (index + 1) % k;
    row[0] = left;
    for (int pos = 1; pos < k; ++pos) {
        if (pos % 2 == 1) {
            row[pos] = right;
            right = (right + 1) % k;
        } else {
            left = (left + k - 1) % k;
            row[pos] = left;
        }
    }
    return row;
}

} // namespace

QuestionnairePlan generate_plan(Method method, const AttributeList& attributes,
                                const std::vector<std::string>& products, int panelists,
                                const PlanOptions& options, const SeedSpec& seed) {
    const int n_products = static_cast<int>(products.size());
    if (n_products < 1) raise(errc::domain_error, "generate_plan: no products");
    if (n_products > 10)
        raise(errc::too_many_products,
              "generate_plan: at most 10 presentations (one identity digit each)");
    {
        std::set<std::string> unique(products.begin(), products.end());
        if (static_cast<int>(unique.size()) != n_products)
            raise(errc::duplicate_product_labels, "generate_plan: duplicate product labels");
    }
    if (panelists < 1) raise(errc::domain_error, "generate_plan: panelists must be >= 1");
    if (options.n_orders < 1) raise(errc::domain_error, "generate_plan: n_orders must be >= 1");
    if (options.code_length < 3 || options.code_length > 6)
        raise(errc::domain_error, "generate_plan: code length must be 3..6");
    if (options.hidden_digit_position < 1 || options.hidden_digit_position > options.code_length)
        raise(errc::domain_error, "generate_plan: hidden digit position outside the code");

    QuestionnairePlan plan;
    plan.method = method;
    plan.attributes = attributes;
    plan.products = products;
    plan.hidden_digit_position = options.hidden_digit_position;
    plan.code_length = options.code_length;

    Rng rng(seed.with_label(seed.stream_label.empty() ? "plan" : seed.stream_label), 0);

    // distinct attribute orders, retry-on-collision (bounded)
    const int n_attrs = static_cast<int>(attributes.size());
    std::set<std::vector<int>> seen_orders;
    for (int k = 0; k < options.n_orders; ++k) {
        std::vector<int> order = identity_permutation(n_attrs);
        for (int attempt = 0; attempt < 64; ++attempt) {
            rng.shuffle(order);
            if (seen_orders.insert(order).second) break;
        }
        plan.orders.push_back(order);
        plan.order_labels.push_back("o" + std::to_string(k + 1));
    }

    // presentation i gets identity digit (i+1) mod 10, matching the
    // wine-number convention; distinct by construction
    for (int i = 0; i < n_products; ++i)
        plan.product_digit[products[i]] = static_cast<char>('0' + (i + 1) % 10);

    // unique codes with the identity digit pinned at the hidden position
    std::set<std::string> seen_codes;
    for (int i = 0; i < n_products; ++i) {
        std::string code;
        do {
            code.clear();
            for (int d = 0; d < options.code_length; ++d)
                code.push_back(static_cast<char>('0' + rng.uniform_below(10)));
            code[options.hidden_digit_position - 1] = plan.product_digit[products[i]];
        } while (!seen_codes.insert(code).second);
        plan.codes.push_back(code);
    }

    // balanced order assignment: as-even-as-possible counts, shuffled
    std::vector<int> assignment;
    assignment.reserve(panelists);
    for (int p = 0; p < panelists; ++p) assignment.push_back(p % options.n_orders);
    rng.shuffle(assignment);
    plan.panelist_order = std::move(assignment);

    plan.serving_orders.reserve(panelists);
    for (int p = 0; p < panelists; ++p) {
        std::vector<int> serving;
        if (options.latin_square_serving) {
            serving = williams_row(p, n_products);
        } else {
            serving = identity_permutation(n_products);
            rng.shuffle(serving);
        }
        plan.serving_orders.push_back(std::move(serving));
    }
    return plan;
}

std::string decode_code(const std::string& code, int hidden_digit_position,
                        const std::map<std::string, char>& product_digit) {
    if (hidden_digit_position < 1 || hidden_digit_position > static_cast<int>(code.size()))
        raise(errc::domain_error, "decode_code: hidden position outside the code");
    for (char ch : code) {
        if (ch < '0' || ch > '9')
            raise(errc::domain_error, "decode_code: code must be decimal digits");
    }
    const char digit = code[hidden_digit_position - 1];
    for (const auto& [product, d] : product_digit) {
        if (d == digit) return product;
    }
    raise(errc::unknown_digit,
          std::string("decode_code: digit '") + digit + "' is not assigned to any product");
}

std::string render_questionnaire(const QuestionnairePlan& plan, int panelist) {
    if (panelist < 1 || panelist > plan.panelists())
        raise(errc::unknown_panelist, "render_questionnaire: panelist " +
                                          std::to_string(panelist) + " not in plan");
    const int p = panelist - 1;
    const auto& order = plan.orders[plan.panelist_order[p]];
    const auto& serving = plan.serving_orders[p];

    std::size_t attr_width = 10;
    for (const auto& a : plan.attributes.names) attr_width = std::max(attr_width, a.size());

    std::ostringstream out;
    const bool apt = plan.method == Method::APT;
    out << "(" << plan.order_labels[plan.panelist_order[p]] << ")\n\n";
    out << (apt ? "APT questionnaire" : "CATA questionnaire") << "\n";
    out << "Panelist: " << panelist << "\n\n";
    if (apt) {
        out << "Taste the pivot \"P\" first, then the coded wine. For each attribute,\n"
               "check the box when the coded wine is MORE intense than the pivot;\n"
               "leave it unchecked when it is less intense or similar.\n"
               "On the last line, give a score between 1 and 9 for your overall\n"
               "appreciation of the coded wine (1 = I don't like it, 9 = I like it\n"
               "very much).\n\n";
    } else {
        out << "Taste the wines one by one, in serving order. Check all the boxes\n"
               "that correspond to the attributes of the coded wine. On the last\n"
               "line, give a score between 1 and 9 for your overall appreciation of\n"
               "the coded wine (1 = I don't like it, 9 = I like it very much).\n\n";
    }

    auto pad = [&](const std::string& s, std::size_t width) {
        std::string r = s;
        if (r.size() < width) r.append(width - r.size(), ' ');
        return r;
    };

    const std::size_t col_width = std::max<std::size_t>(apt ? 14 : 10, plan.code_length + 7);
    out << pad("Attributes", attr_width);
    for (int idx : serving) out << " | " << pad("Wine " + plan.codes[idx], col_width);
    out << "\n";
    if (apt) {
        out << pad("", attr_width);
        for (std::size_t i = 0; i < serving.size(); ++i)
            out << " | " << pad("more than \"P\"", col_width);
        out << "\n";
    }
    out << std::string(attr_width, '-');
    for (std::size_t i = 0; i < serving.size(); ++i)
        out << "-+-" << std::string(col_width, '-');
    out << "\n";
    for (int aj : order) {
        out << pad(plan.attributes.names[aj], attr_width);
        for (std::size_t i = 0; i < serving.size(); ++i) out << " | " << pad("[ ]", col_width);
        out << "\n";
    }
    out << pad("Score 1 to 9", attr_width);
    for (std::size_t i = 0; i < serving.size(); ++i) out << " | " << pad("____", col_width);
    out << "\n";
    return out.str();
}

void write_key_csv(const QuestionnairePlan& plan, std::ostream& out, char separator) {
    out << "code" << separator << "product" << separator << "digit" << '\n';
    for (std::size_t i = 0; i < plan.products.size(); ++i) {
        out << plan.codes[i] << separator << plan.products[i] << separator
            << plan.product_digit.at(plan.products[i]) << '\n';
    }
}

void write_plan_csv(const QuestionnairePlan& plan, std::ostream& out, char separator) {
    out << "panelist" << separator << "order" << separator << "serving" << '\n';
    for (int p = 0; p < plan.panelists(); ++p) {
        out << (p + 1) << separator << plan.order_labels[plan.panelist_order[p]] << separator;
        for (std::size_t i = 0; i < plan.serving_orders[p].size(); ++i) {
            if (i) out << ' ';
            out << plan.codes[plan.serving_orders[p][i]];
        }
        out << '\n';
    }
}

} // namespace catapt

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "catapt/dataset.hpp"
#include "catapt/rng.hpp"

namespace catapt {

// Session artifacts for one tasting: randomized attribute orders, coded
// wine labels with a hidden identity digit, per-panelist serving orders,
// and a balanced panelist-to-order assignment.
struct QuestionnairePlan {
    Method method = Method::CATA;
    AttributeList attributes;

    std::vector<std::vector<int>> orders; // K permutations of attribute indices
    std::vector<std::string> order_labels; // "o1".."oK"

    std::vector<std::string> products; // presentations, in given order
    std::vector<std::string> codes;    // one n-digit code per presentation
    int hidden_digit_position = 2;     // 1-based position of the identity digit
    int code_length = 3;
    std::map<std::string, char> product_digit;

    std::vector<std::vector<int>> serving_orders; // per panelist: presentation indices
    std::vector<int> panelist_order; // per panelist: index into `orders`

    int panelists() const { return static_cast<int>(serving_orders.size()); }
};

struct PlanOptions {
    int n_orders = 10;
    int hidden_digit_position = 2;
    int code_length = 3; // 3..6 for repeated sessions
    bool latin_square_serving = false; // Williams design instead of fresh permutations
};

QuestionnairePlan generate_plan(Method method, const AttributeList& attributes,
                                const std::vector<std::string>& products, int panelists,
                                const PlanOptions& options, const SeedSpec& seed);

// Recover the product from a served code via the hidden identity digit.
std::string decode_code(const std::string& code, int hidden_digit_position,
                        const std::map<std::string, char>& product_digit);

// Printable questionnaire for one panelist: order marker, instruction line,
// attribute grid in the panelist's assigned order, one column per coded
// wine, and a final hedonic line.
std::string render_questionnaire(const QuestionnairePlan& plan, int panelist);

// server key: code -> product (plus the digit assignment)
void write_key_csv(const QuestionnairePlan& plan, std::ostream& out, char separator = ';');
// per-panelist assignment: order label and serving order
void write_plan_csv(const QuestionnairePlan& plan, std::ostream& out, char separator = ';');

} // namespace catapt

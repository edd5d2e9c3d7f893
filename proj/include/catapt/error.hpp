#pragma once

#include <stdexcept>
#include <string>

namespace catapt {

// Stable error identities; the CLI maps categories to exit codes.
enum class errc {
    // input / validation (exit code 1)
    malformed_header,
    non_binary_cell,
    duplicate_pair,
    bad_hedonic,
    invalid_dataset,
    missing_scores,
    single_group,
    domain_error,
    size_out_of_range,
    too_many_products,
    duplicate_product_labels,
    unknown_digit,
    unknown_panelist,
    io_error,
    // numerical degeneracy (exit code 2)
    degenerate_table,
    empty_selection,
    zero_row,
};

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

    bool is_degeneracy() const noexcept {
        return code_ == errc::degenerate_table || code_ == errc::empty_selection ||
               code_ == errc::zero_row;
    }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

} // namespace catapt

#pragma once

#include <stdexcept>
#include <string>

namespace copool {

enum class Errc {
    dimension_too_small,
    entry_out_of_range,
    sum_not_one,
    dimension_mismatch,
    not_stochastic,
    invalid_argument,
    undefined_divergence,
    outcome_out_of_range,
    empty_input,
    parse_error,
    missing_outcome,
    duplicate_entry,
    empty_panel,
    io_error,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace copool

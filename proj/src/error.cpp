#include "copool/error.hpp"

namespace copool {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::dimension_too_small: return "dimension-too-small";
        case Errc::entry_out_of_range: return "entry-out-of-range";
        case Errc::sum_not_one: return "sum-not-one";
        case Errc::dimension_mismatch: return "dimension-mismatch";
        case Errc::not_stochastic: return "not-stochastic";
        case Errc::invalid_argument: return "invalid-argument";
        case Errc::undefined_divergence: return "undefined-divergence";
        case Errc::outcome_out_of_range: return "outcome-out-of-range";
        case Errc::empty_input: return "empty-input";
        case Errc::parse_error: return "parse-error";
        case Errc::missing_outcome: return "missing-outcome";
        case Errc::duplicate_entry: return "duplicate-entry";
        case Errc::empty_panel: return "empty-panel";
        case Errc::io_error: return "io-error";
    }
    return "unknown";
}

}  // namespace copool

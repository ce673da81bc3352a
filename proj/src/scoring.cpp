#include "copool/scoring.hpp"

#include <cmath>
#include <string>

#include "copool/error.hpp"
#include "copool/pooling.hpp"

namespace copool {

double quadratic_score(const Opinion& reported, Outcome outcome) {
    if (outcome.index() >= reported.size()) {
        throw Error(Errc::outcome_out_of_range,
                    "outcome " + std::to_string(outcome.one_based_index()) + " is outside 1.." +
                        std::to_string(reported.size()));
    }
    double squares = 0.0;
    for (double p : reported.probs()) squares += p * p;
    return 2.0 * reported[outcome.index()] - squares;
}

double affine_score(const Opinion& reported, Outcome outcome, double x, double y) {
    if (!(x > 0.0)) throw Error(Errc::invalid_argument, "affine score scale must be positive");
    return x * quadratic_score(reported, outcome) + y;
}

double contest_score(double prob_assigned_to_loser) {
    const double p = prob_assigned_to_loser;
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(Errc::entry_out_of_range, "loser probability must lie in [0, 1]");
    }
    return 100.0 - 400.0 * p * p;
}

double expected_score(const Opinion& believer, const Opinion& reported) {
    if (believer.size() != reported.size()) {
        throw Error(Errc::dimension_mismatch, "expected_score: dimensions differ");
    }
    double total = 0.0;
    for (std::size_t e = 0; e < believer.size(); ++e) {
        total += believer[e] * quadratic_score(reported, Outcome::zero_based(e));
    }
    return total;
}

double expected_score(const Opinion& believer, const Opinion& reported, AffineTransform transform) {
    if (believer.size() != reported.size()) {
        throw Error(Errc::dimension_mismatch, "expected_score: dimensions differ");
    }
    double total = 0.0;
    for (std::size_t e = 0; e < believer.size(); ++e) {
        total += believer[e] *
                 affine_score(reported, Outcome::zero_based(e), transform.scale, transform.offset);
    }
    return total;
}

namespace {

int strict_order(double a, double b) {
    if (std::fabs(a - b) < kEffectivenessTieTolerance) return 0;
    return a < b ? -1 : 1;
}

}  // namespace

std::vector<EffectivenessViolation> effectiveness_audit(const OpinionPanel& panel, double epsilon,
                                                        AffineTransform transform) {
    const WeightMatrix weights = consensual_weights(panel, epsilon);
    const auto opinions = panel.opinions();
    const std::size_t n = panel.n();

    // scores[i * n + j] = E_{f_i}[R(f_j)]
    std::vector<double> scores(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            scores[i * n + j] = expected_score(opinions[i], opinions[j], transform);
        }
    }

    std::vector<EffectivenessViolation> violations;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const int by_weight = strict_order(weights(i, j), weights(i, k));
                const int by_score = strict_order(scores[i * n + j], scores[i * n + k]);
                if (by_weight == 0 || by_score == 0 || by_weight == by_score) continue;
                violations.push_back({
                    .evaluator = i,
                    .pair = {j, k},
                    .weight_order = {weights(i, j), weights(i, k)},
                    .expected_score_order = {scores[i * n + j], scores[i * n + k]},
                });
            }
        }
    }
    return violations;
}

}  // namespace copool

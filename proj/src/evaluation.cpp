#include "copool/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "copool/error.hpp"
#include "copool/rng.hpp"

namespace copool {

namespace {

void require_binary(const Opinion& aggregate, const char* what) {
    if (aggregate.size() != 2) {
        throw Error(Errc::dimension_mismatch, std::string(what) + " is defined for binary events only, got z = " +
                                                  std::to_string(aggregate.size()));
    }
}

}  // namespace

AccuracyStats overall_accuracy(std::span<const ScoredAggregate> results) {
    if (results.empty()) throw Error(Errc::empty_input, "overall_accuracy: no games");
    AccuracyStats stats;
    for (const auto& [aggregate, winner] : results) {
        require_binary(aggregate, "overall accuracy");
        if (winner.index() >= 2) throw Error(Errc::outcome_out_of_range, "winner must be 1 or 2");
        std::optional<std::size_t> favorite;
        for (std::size_t k = 0; k < 2; ++k) {
            if (aggregate[k] > 0.5) favorite = k;
        }
        if (!favorite) {
            ++stats.excluded;
            continue;
        }
        ++stats.counted;
        if (*favorite == winner.index()) ++stats.correct;
    }
    if (stats.counted > 0) {
        stats.accuracy = static_cast<double>(stats.correct) / static_cast<double>(stats.counted);
    }
    return stats;
}

double absolute_error(const Opinion& aggregate, Outcome winner) {
    require_binary(aggregate, "absolute error");
    if (winner.index() >= 2) throw Error(Errc::outcome_out_of_range, "winner must be 1 or 2");
    return aggregate[1 - winner.index()];
}

namespace {

struct SignedRanks {
    // Ranks doubled so that average ranks of tie groups stay integral.
    std::vector<std::uint32_t> doubled_ranks;
    std::uint64_t doubled_positive_sum = 0;
    // sum over tie groups of (t^3 - t)
    double tie_term = 0.0;
};

SignedRanks rank_nonzero(std::span<const double> differences) {
    std::vector<double> nonzero;
    for (double d : differences) {
        if (d != 0.0) nonzero.push_back(d);
    }
    std::vector<std::size_t> order(nonzero.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::fabs(nonzero[a]) < std::fabs(nonzero[b]);
    });

    SignedRanks out;
    out.doubled_ranks.resize(nonzero.size());
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() &&
               std::fabs(nonzero[order[end]]) == std::fabs(nonzero[order[start]])) {
            ++end;
        }
        // ranks start+1 .. end share their mean; doubled that is start+1+end.
        const auto doubled = static_cast<std::uint32_t>(start + 1 + end);
        for (std::size_t r = start; r < end; ++r) {
            out.doubled_ranks[order[r]] = doubled;
            if (nonzero[order[r]] > 0.0) out.doubled_positive_sum += doubled;
        }
        const double t = static_cast<double>(end - start);
        out.tie_term += t * t * t - t;
        start = end;
    }
    return out;
}

// Null distribution of the doubled rank sum by dynamic programming over
// the ranks: counts[s] = number of sign assignments with doubled W+ = s.
double exact_left_tail(const SignedRanks& ranks) {
    std::uint64_t total = 0;
    for (auto r : ranks.doubled_ranks) total += r;
    std::vector<double> counts(total + 1, 0.0);
    counts[0] = 1.0;
    std::uint64_t reach = 0;
    for (auto r : ranks.doubled_ranks) {
        for (std::uint64_t s = reach + 1; s-- > 0;) {
            if (counts[s] != 0.0) counts[s + r] += counts[s];
        }
        reach += r;
    }
    double below = 0.0;
    for (std::uint64_t s = 0; s <= ranks.doubled_positive_sum; ++s) below += counts[s];
    return std::ldexp(below, -static_cast<int>(ranks.doubled_ranks.size()));
}

double normal_left_tail(const SignedRanks& ranks) {
    const auto m = static_cast<double>(ranks.doubled_ranks.size());
    const double mean = m * (m + 1.0) / 4.0;
    const double variance = m * (m + 1.0) * (2.0 * m + 1.0) / 24.0 - ranks.tie_term / 48.0;
    const double w = static_cast<double>(ranks.doubled_positive_sum) / 2.0;
    if (variance <= 0.0) return w >= mean ? 1.0 : 0.0;
    const double z = (w - mean + 0.5) / std::sqrt(variance);
    return std::clamp(0.5 * std::erfc(-z / std::numbers::sqrt2), 0.0, 1.0);
}

}  // namespace

WilcoxonResult wilcoxon_left_tailed(std::span<const double> differences, WilcoxonMethod method) {
    const SignedRanks ranks = rank_nonzero(differences);
    const std::size_t m = ranks.doubled_ranks.size();
    if (m == 0) throw Error(Errc::empty_input, "wilcoxon: every paired difference is zero");

    bool exact = false;
    switch (method) {
        case WilcoxonMethod::automatic: exact = m <= kWilcoxonExactLimit; break;
        case WilcoxonMethod::exact: exact = true; break;
        case WilcoxonMethod::normal: exact = false; break;
    }
    if (exact && m > 60) {
        throw Error(Errc::invalid_argument, "wilcoxon: exact distribution limited to 60 pairs");
    }
    return WilcoxonResult{
        .statistic = static_cast<double>(ranks.doubled_positive_sum) / 2.0,
        .p_value = exact ? exact_left_tail(ranks) : normal_left_tail(ranks),
        .n = m,
        .exact = exact,
    };
}

OpinionPanel synthetic_panel(const SyntheticPanelSpec& spec, const Opinion& ground_truth) {
    if (spec.n == 0) throw Error(Errc::invalid_argument, "synthetic panel needs n >= 1");
    if (spec.z != ground_truth.size()) {
        throw Error(Errc::dimension_mismatch, "ground truth dimension differs from z");
    }
    if (spec.outlier_count >= spec.n) {
        throw Error(Errc::invalid_argument, "outlier_count must be smaller than n");
    }
    if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise)) {
        throw Error(Errc::invalid_argument, "noise must be a non-negative finite scale");
    }

    Rng rng(spec.seed);
    std::vector<std::size_t> rows(spec.n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    // Partial Fisher-Yates: the first outlier_count entries become outlier rows.
    for (std::size_t i = 0; i < spec.outlier_count; ++i) {
        std::swap(rows[i], rows[i + rng.below(spec.n - i)]);
    }
    std::vector<bool> is_outlier(spec.n, false);
    for (std::size_t i = 0; i < spec.outlier_count; ++i) is_outlier[rows[i]] = true;

    Matrix m(spec.n, spec.z);
    for (std::size_t i = 0; i < spec.n; ++i) {
        auto row = m.row(i);
        if (is_outlier[i]) {
            const auto p = rng.simplex(spec.z);
            std::copy(p.begin(), p.end(), row.begin());
            continue;
        }
        if (spec.noise == 0.0) {
            std::copy(ground_truth.probs().begin(), ground_truth.probs().end(), row.begin());
            continue;
        }
        double total = 0.0;
        do {
            total = 0.0;
            for (std::size_t k = 0; k < spec.z; ++k) {
                row[k] = std::clamp(ground_truth[k] + spec.noise * rng.normal(), 0.0, 1.0);
                total += row[k];
            }
        } while (total == 0.0);
        for (double& v : row) v /= total;
    }
    return OpinionPanel::from_matrix(std::move(m));
}

std::vector<SyntheticGame> synthetic_games(const SyntheticDatasetSpec& spec) {
    if (spec.games == 0) throw Error(Errc::invalid_argument, "synthetic dataset needs at least one game");
    Rng rng(spec.seed);
    std::vector<SyntheticGame> games;
    games.reserve(spec.games);
    const std::size_t width = std::to_string(spec.games).size();
    for (std::size_t g = 0; g < spec.games; ++g) {
        const double p = rng.uniform();
        Opinion truth = validate_opinion({p, 1.0 - p});
        const std::uint64_t panel_seed = rng.next();
        const Outcome winner = Outcome::zero_based(rng.uniform() < p ? 0 : 1);
        OpinionPanel panel = synthetic_panel(
            {.seed = panel_seed, .n = spec.experts, .z = 2, .noise = spec.noise, .outlier_count = spec.outliers},
            truth);

        std::string id = std::to_string(g + 1);
        id.insert(0, width - id.size(), '0');
        std::vector<std::string> experts(spec.experts);
        for (std::size_t i = 0; i < spec.experts; ++i) experts[i] = "E" + std::to_string(i + 1);
        games.push_back({.record = {.game_id = "G" + id,
                                    .panel = std::move(panel),
                                    .winner = winner,
                                    .expert_ids = std::move(experts)},
                         .ground_truth = std::move(truth)});
    }
    return games;
}

void summarize(MethodResult& result, std::span<const Outcome> winners) {
    if (winners.size() != result.per_game.size()) {
        throw Error(Errc::dimension_mismatch, "summarize: one winner per scored game required");
    }
    result.accuracy = {};
    result.mean_absolute_error = 0.0;
    result.stddev_absolute_error = 0.0;
    if (result.per_game.empty()) return;

    std::vector<ScoredAggregate> scored;
    scored.reserve(winners.size());
    for (std::size_t g = 0; g < winners.size(); ++g) scored.push_back({result.per_game[g].aggregate, winners[g]});
    result.accuracy = overall_accuracy(scored);

    const auto count = static_cast<double>(result.per_game.size());
    double sum = 0.0;
    for (const auto& game : result.per_game) sum += game.absolute_error;
    const double mean = sum / count;
    double squares = 0.0;
    for (const auto& game : result.per_game) {
        const double d = game.absolute_error - mean;
        squares += d * d;
    }
    result.mean_absolute_error = mean;
    result.stddev_absolute_error = result.per_game.size() > 1 ? std::sqrt(squares / (count - 1.0)) : 0.0;
}

}  // namespace copool

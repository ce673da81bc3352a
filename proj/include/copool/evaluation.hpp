#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "copool/opinion.hpp"
#include "copool/scoring.hpp"

namespace copool {

/// One binary (or z-ary) event: the experts who reported and the realized outcome.
struct GameRecord {
    std::string game_id;
    OpinionPanel panel;
    Outcome winner;
    /// Expert ids in panel row order; empty when the source has none.
    std::vector<std::string> expert_ids;
};

struct ScoredAggregate {
    Opinion aggregate;
    Outcome winner;
};

struct AccuracyStats {
    /// correct / counted; empty when no game had a favorite.
    std::optional<double> accuracy;
    std::size_t correct = 0;
    std::size_t counted = 0;
    /// Games without a coordinate strictly above 0.5.
    std::size_t excluded = 0;

    bool operator==(const AccuracyStats&) const = default;
};

/// Share of games whose predicted favorite (probability > 0.5) won. Binary
/// events only; throws dimension_mismatch for z != 2 and empty_input.
AccuracyStats overall_accuracy(std::span<const ScoredAggregate> results);

/// Probability the aggregate gave to the losing side. Binary events only.
double absolute_error(const Opinion& aggregate, Outcome winner);

enum class WilcoxonMethod { automatic, exact, normal };

/// Largest number of nonzero differences handled exactly in automatic mode.
inline constexpr std::size_t kWilcoxonExactLimit = 20;

struct WilcoxonResult {
    /// W+, the rank sum of the positive differences (average ranks for ties).
    double statistic = 0.0;
    /// P(W <= W+) under the symmetric null.
    double p_value = 1.0;
    /// Nonzero differences after dropping exact zeros.
    std::size_t n = 0;
    bool exact = true;

    bool operator==(const WilcoxonResult&) const = default;
};

/// Left-tailed Wilcoxon signed-rank test on paired differences. Small p means
/// the differences tend to be negative. Throws empty_input if every
/// difference is zero.
WilcoxonResult wilcoxon_left_tailed(std::span<const double> differences,
                                    WilcoxonMethod method = WilcoxonMethod::automatic);

struct SyntheticPanelSpec {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t z = 2;
    double noise = 0.05;
    std::size_t outlier_count = 0;
};

/// n - outlier_count rows are ground_truth plus N(0, noise^2) per coordinate,
/// clamped to [0, 1] and renormalized; outlier rows are uniform on the
/// simplex and placed at random rows. Deterministic for a given seed.
OpinionPanel synthetic_panel(const SyntheticPanelSpec& spec, const Opinion& ground_truth);

struct SyntheticDatasetSpec {
    std::uint64_t seed = 0;
    std::size_t games = 200;
    std::size_t experts = 100;
    double noise = 0.05;
    std::size_t outliers = 1;
};

struct SyntheticGame {
    GameRecord record;
    Opinion ground_truth;
};

/// Binary games with a uniform ground truth per game, a panel drawn by
/// synthetic_panel, and a winner drawn from the ground truth.
std::vector<SyntheticGame> synthetic_games(const SyntheticDatasetSpec& spec);

struct GameResult {
    std::string game_id;
    Opinion aggregate;
    double absolute_error = 0.0;
    /// Consensual method only.
    std::optional<std::size_t> iterations;
    /// Consensual method only, and only when traces were requested.
    std::vector<double> delta_trace;

    bool operator==(const GameResult&) const = default;
};

struct SkippedGame {
    std::string game_id;
    std::string reason;

    bool operator==(const SkippedGame&) const = default;
};

struct MethodResult {
    std::string method_name;
    std::vector<GameResult> per_game;
    AccuracyStats accuracy;
    double mean_absolute_error = 0.0;
    /// Sample standard deviation (n - 1 denominator); 0 for a single game.
    double stddev_absolute_error = 0.0;
    std::vector<SkippedGame> skipped_games;
    std::vector<std::string> warnings;

    bool operator==(const MethodResult&) const = default;
};

/// Fills accuracy and absolute-error summaries from per_game and winners.
/// winners is indexed like per_game.
void summarize(MethodResult& result, std::span<const Outcome> winners);

}  // namespace copool

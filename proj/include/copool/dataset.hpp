#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "copool/evaluation.hpp"

namespace copool {

struct LoadOptions {
    /// Rescale non-negative rows that do not sum to 1 instead of rejecting them.
    bool renormalize = false;
    /// Binary files may carry only p_1; derive p_2 = 1 - p_1.
    bool derive_complement = false;
};

/// Reads `game_id,expert_id,p_1,...,p_z` opinion rows and `game_id,winner`
/// outcome rows (winner one-based). Games keep the order of their first
/// opinion row; experts absent from a game are absent from its panel.
/// Errors carry the file name and line number.
std::vector<GameRecord> load_dataset(const std::filesystem::path& opinions_path,
                                     const std::filesystem::path& outcomes_path,
                                     const LoadOptions& options = {});

/// Writes games in the layout load_dataset reads, numbers at 17 significant digits.
void write_dataset(std::span<const GameRecord> games, const std::filesystem::path& opinions_path,
                   const std::filesystem::path& outcomes_path);

}  // namespace copool

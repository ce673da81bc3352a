#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "copool/dataset.hpp"
#include "copool/evaluation.hpp"
#include "copool/pooling.hpp"

namespace copool {

enum class Method { consensual, average, bms };

std::string_view to_string(Method m) noexcept;
/// Throws invalid_argument for an unknown name.
Method parse_method(std::string_view name);
/// Comma-separated list, e.g. "consensual,average,bms".
std::vector<Method> parse_methods(std::string_view list);

enum class ReportFormat { json, csv };

struct RunConfig {
    std::vector<Method> methods{Method::consensual, Method::average, Method::bms};
    PoolConfig pool;
    std::filesystem::path opinions_path;
    std::filesystem::path outcomes_path;
    std::filesystem::path report_path;
    ReportFormat report_format = ReportFormat::json;
    bool renormalize_inputs = false;
    bool derive_complement = false;
    bool include_trace = false;
    /// When set, games come from synthetic_games instead of the input files.
    std::optional<SyntheticDatasetSpec> synthetic;

    /// Throws invalid_argument on an empty or repeated method list or bad pool settings.
    void validate() const;
};

/// Left-tailed Wilcoxon on per-game absolute_error(first) - absolute_error(second).
struct PairwiseTest {
    std::string first;
    std::string second;
    /// Games scored by both methods.
    std::size_t paired_games = 0;
    /// Empty when every paired difference is zero.
    std::optional<WilcoxonResult> test;

    bool operator==(const PairwiseTest&) const = default;
};

struct RunSettings {
    std::vector<std::string> methods;
    double epsilon = 0.0;
    double tolerance = 0.0;
    std::size_t max_iterations = 0;
    double bms_clamp = 0.0;
    std::size_t games = 0;

    bool operator==(const RunSettings&) const = default;
};

struct EvaluationReport {
    RunSettings settings;
    std::vector<MethodResult> methods;
    std::vector<PairwiseTest> pairwise;

    bool operator==(const EvaluationReport&) const = default;
};

/// Aggregates every game with every selected method, then summarizes and
/// runs the pairwise tests for each method pair in selection order. Games are
/// processed in parallel; results keep input order.
EvaluationReport run_benchmark(std::span<const GameRecord> games, const RunConfig& config);

/// Loads (or synthesizes) the games named by config and benchmarks them.
EvaluationReport run_benchmark(const RunConfig& config);

/// Games for config: synthetic when config.synthetic is set, else load_dataset.
std::vector<GameRecord> load_games(const RunConfig& config);

}  // namespace copool

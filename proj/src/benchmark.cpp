#include "copool/benchmark.hpp"

#include <cstdint>
#include <exception>
#include <set>
#include <string>

#include "copool/error.hpp"

namespace copool {

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::consensual: return "consensual";
        case Method::average: return "average";
        case Method::bms: return "bms";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::consensual, Method::average, Method::bms}) {
        if (name == to_string(m)) return m;
    }
    throw Error(Errc::invalid_argument, "unknown method '" + std::string(name) + "'");
}

std::vector<Method> parse_methods(std::string_view list) {
    std::vector<Method> methods;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        methods.push_back(parse_method(list.substr(start, comma - start)));
        start = comma + 1;
    }
    return methods;
}

void RunConfig::validate() const {
    if (methods.empty()) throw Error(Errc::invalid_argument, "select at least one method");
    std::set<Method> unique(methods.begin(), methods.end());
    if (unique.size() != methods.size()) throw Error(Errc::invalid_argument, "method list repeats a method");
    pool.validate();
}

namespace {

struct Cell {
    std::optional<GameResult> result;
    std::string skip_reason;
    std::string warning;
};

Cell aggregate_game(const GameRecord& game, Method method, const RunConfig& config) {
    Cell cell;
    try {
        switch (method) {
            case Method::consensual: {
                ConsensusResult r = consensual_pool(game.panel, config.pool);
                if (!r.converged) {
                    cell.skip_reason = "no consensus after " + std::to_string(r.iterations) +
                                       " iterations (delta " + std::to_string(r.final_delta()) + ")";
                    return cell;
                }
                cell.result = GameResult{.game_id = game.game_id,
                                         .aggregate = r.consensus,
                                         .absolute_error = absolute_error(r.consensus, game.winner),
                                         .iterations = r.iterations,
                                         .delta_trace = config.include_trace ? std::move(r.delta_trace)
                                                                             : std::vector<double>{}};
                return cell;
            }
            case Method::average: {
                Opinion pooled = average_pool(game.panel);
                const double err = absolute_error(pooled, game.winner);
                cell.result = GameResult{.game_id = game.game_id, .aggregate = std::move(pooled), .absolute_error = err};
                return cell;
            }
            case Method::bms: {
                if (game.panel.n() < 2) {
                    cell.skip_reason = "BMS needs at least two experts";
                    return cell;
                }
                BmsResult r = bms_pool_detailed(game.panel, config.pool.bms_clamp);
                if (r.weights.degenerate) {
                    cell.warning = "game " + game.game_id + ": all opinions identical, BMS fell back to uniform weights";
                }
                const double err = absolute_error(r.pooled, game.winner);
                cell.result = GameResult{.game_id = game.game_id, .aggregate = std::move(r.pooled), .absolute_error = err};
                return cell;
            }
        }
    } catch (const Error& e) {
        throw Error(e.code(), "game " + game.game_id + " (" + std::string(to_string(method)) + "): " + e.what());
    }
    return cell;
}

}  // namespace

EvaluationReport run_benchmark(std::span<const GameRecord> games, const RunConfig& config) {
    config.validate();
    const std::size_t n_methods = config.methods.size();
    std::vector<Cell> cells(games.size() * n_methods);

    std::exception_ptr failure;
    const auto total = static_cast<std::int64_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < total; ++c) {
        const auto g = static_cast<std::size_t>(c) / n_methods;
        const auto m = static_cast<std::size_t>(c) % n_methods;
        try {
            cells[static_cast<std::size_t>(c)] = aggregate_game(games[g], config.methods[m], config);
        } catch (...) {
#pragma omp critical(copool_benchmark_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    EvaluationReport report;
    report.settings = {.methods = {},
                       .epsilon = config.pool.epsilon,
                       .tolerance = config.pool.tolerance,
                       .max_iterations = config.pool.max_iterations,
                       .bms_clamp = config.pool.bms_clamp,
                       .games = games.size()};
    // Per method: which games were scored, for pairing.
    std::vector<std::vector<std::optional<double>>> errors(n_methods, std::vector<std::optional<double>>(games.size()));
    for (std::size_t m = 0; m < n_methods; ++m) {
        MethodResult result;
        result.method_name = std::string(to_string(config.methods[m]));
        report.settings.methods.push_back(result.method_name);
        std::vector<Outcome> winners;
        for (std::size_t g = 0; g < games.size(); ++g) {
            Cell& cell = cells[g * n_methods + m];
            if (!cell.warning.empty()) result.warnings.push_back(std::move(cell.warning));
            if (!cell.result) {
                result.skipped_games.push_back({games[g].game_id, std::move(cell.skip_reason)});
                continue;
            }
            errors[m][g] = cell.result->absolute_error;
            winners.push_back(games[g].winner);
            result.per_game.push_back(std::move(*cell.result));
        }
        summarize(result, winners);
        report.methods.push_back(std::move(result));
    }

    for (std::size_t a = 0; a < n_methods; ++a) {
        for (std::size_t b = a + 1; b < n_methods; ++b) {
            PairwiseTest pair{.first = report.methods[a].method_name,
                              .second = report.methods[b].method_name,
                              .paired_games = 0,
                              .test = std::nullopt};
            std::vector<double> differences;
            for (std::size_t g = 0; g < games.size(); ++g) {
                if (errors[a][g] && errors[b][g]) differences.push_back(*errors[a][g] - *errors[b][g]);
            }
            pair.paired_games = differences.size();
            bool any_nonzero = false;
            for (double d : differences) any_nonzero = any_nonzero || d != 0.0;
            if (any_nonzero) pair.test = wilcoxon_left_tailed(differences);
            report.pairwise.push_back(std::move(pair));
        }
    }
    return report;
}

std::vector<GameRecord> load_games(const RunConfig& config) {
    if (config.synthetic) {
        std::vector<GameRecord> games;
        for (auto& g : synthetic_games(*config.synthetic)) games.push_back(std::move(g.record));
        return games;
    }
    return load_dataset(config.opinions_path, config.outcomes_path,
                        {.renormalize = config.renormalize_inputs, .derive_complement = config.derive_complement});
}

EvaluationReport run_benchmark(const RunConfig& config) {
    config.validate();
    const auto games = load_games(config);
    return run_benchmark(games, config);
}

}  // namespace copool

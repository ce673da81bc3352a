// Command-line driver: benchmark the pools on a dataset, generate synthetic
// datasets, and replay the three-expert worked example.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "copool/benchmark.hpp"
#include "copool/distance.hpp"
#include "copool/error.hpp"
#include "copool/report.hpp"

namespace {

using namespace copool;

enum ExitCode { ok = 0, failed_check = 1, parse_failed = 2, validate_failed = 3, pool_failed = 4, emit_failed = 5 };

// Runs one stage, mapping any exception to a diagnostic naming the stage.
template <typename Fn>
bool stage(const char* name, ExitCode code, int& exit_code, Fn&& fn) {
    try {
        fn();
        return true;
    } catch (const Error& e) {
        std::cerr << "pool: " << name << " failed [" << to_string(e.code()) << "]: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "pool: " << name << " failed: " << e.what() << '\n';
    }
    exit_code = code;
    return false;
}

bool is_data_error(Errc code) {
    return code == Errc::parse_error || code == Errc::io_error;
}

int run_command(const RunConfig& config) {
    int exit_code = ok;
    std::vector<GameRecord> games;
    // Loading raises parse errors for malformed files and validation errors for
    // well-formed rows that break the invariants; report them as separate stages.
    try {
        config.validate();
        games = load_games(config);
    } catch (const Error& e) {
        const bool parse = is_data_error(e.code());
        std::cerr << "pool: " << (parse ? "parse" : "validate") << " failed [" << to_string(e.code())
                  << "]: " << e.what() << '\n';
        return parse ? parse_failed : validate_failed;
    }

    EvaluationReport report;
    if (!stage("pool", pool_failed, exit_code, [&] { report = run_benchmark(games, config); })) return exit_code;
    if (!stage("emit", emit_failed, exit_code, [&] { emit_report(report, config.report_format, config.report_path); }))
        return exit_code;

    for (const auto& m : report.methods) {
        std::printf("%-11s accuracy %s  mean abs error %.4f (sd %.4f)  scored %zu  skipped %zu\n",
                    m.method_name.c_str(),
                    m.accuracy.accuracy ? std::to_string(*m.accuracy.accuracy).c_str() : "n/a",
                    m.mean_absolute_error, m.stddev_absolute_error, m.per_game.size(), m.skipped_games.size());
        for (const auto& s : m.skipped_games) {
            std::printf("  SKIPPED %s: %s\n", s.game_id.c_str(), s.reason.c_str());
        }
        for (const auto& w : m.warnings) std::printf("  warning: %s\n", w.c_str());
    }
    for (const auto& p : report.pairwise) {
        if (p.test) {
            std::printf("wilcoxon %s < %s: W+ = %g, p = %.6g (n = %zu, %s)\n", p.first.c_str(), p.second.c_str(),
                        p.test->statistic, p.test->p_value, p.test->n, p.test->exact ? "exact" : "normal");
        } else {
            std::printf("wilcoxon %s < %s: all paired differences are zero\n", p.first.c_str(), p.second.c_str());
        }
    }
    return ok;
}

int synth_command(const SyntheticDatasetSpec& spec, const std::filesystem::path& out_dir) {
    int exit_code = ok;
    std::vector<SyntheticGame> games;
    if (!stage("validate", validate_failed, exit_code, [&] { games = synthetic_games(spec); })) return exit_code;
    std::vector<GameRecord> records;
    for (auto& g : games) records.push_back(std::move(g.record));
    if (!stage("emit", emit_failed, exit_code, [&] {
            std::filesystem::create_directories(out_dir);
            write_dataset(records, out_dir / "opinions.csv", out_dir / "outcomes.csv");
        }))
        return exit_code;
    std::printf("wrote %zu games to %s\n", records.size(), out_dir.string().c_str());
    return ok;
}

struct Check {
    std::string label;
    double expected;
    double actual;
    double tolerance;
};

int example_command() {
    const OpinionPanel panel({validate_opinion({0.9, 0.1}), validate_opinion({0.05, 0.95}),
                              validate_opinion({0.2, 0.8})});
    const double epsilon = 0.01;
    const auto f = panel.opinions();

    const WeightMatrix weights = consensual_weights(panel, epsilon);
    const OpinionPanel revised = consensual_step(panel, epsilon);
    const ConsensusResult consensus = consensual_pool(panel, {.epsilon = epsilon, .tolerance = 1e-9});
    const Opinion average = average_pool(panel);

    const double expected_weights[3][3] = {{0.975, 0.011, 0.014}, {0.011, 0.931, 0.058}, {0.013, 0.058, 0.929}};
    std::vector<Check> checks{
        {"D(f1, f2)", 0.85, rmsd(f[0], f[1]), 1e-12},
        {"D(f1, f3)", 0.7, rmsd(f[0], f[2]), 1e-12},
    };
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            checks.push_back({"P1[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]",
                              expected_weights[i][j], weights(i, j), 1e-3});
        }
    }
    checks.push_back({"f1^(1)[1]", 0.8809, revised.row(0)[0], 1e-3});
    checks.push_back({"f1^(1)[2]", 0.1191, revised.row(0)[1], 1e-3});
    checks.push_back({"consensus[1]", 0.3175, consensus.consensus[0], 1e-3});
    checks.push_back({"consensus[2]", 0.6825, consensus.consensus[1], 1e-3});
    checks.push_back({"average[1]", 0.3833, average[0], 1e-4});
    checks.push_back({"average[2]", 0.6167, average[1], 1e-4});

    std::printf("three experts: (0.9, 0.1), (0.05, 0.95), (0.2, 0.8); epsilon = %g\n\n", epsilon);
    std::printf("%-14s %10s %12s %9s  %s\n", "quantity", "expected", "computed", "tolerance", "status");
    bool all = true;
    for (const auto& c : checks) {
        const bool pass = std::fabs(c.expected - c.actual) <= c.tolerance;
        all = all && pass;
        std::printf("%-14s %10.4f %12.6f %9.0e  %s\n", c.label.c_str(), c.expected, c.actual, c.tolerance,
                    pass ? "ok" : "MISMATCH");
    }
    std::printf("\nconsensus reached after %zu iterations (final delta %.3g)\n", consensus.iterations,
                consensus.final_delta());
    std::printf("effective weights: (%.4f, %.4f, %.4f)\n", consensus.effective_weights[0],
                consensus.effective_weights[1], consensus.effective_weights[2]);
    return all ? ok : failed_check;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Consensual opinion pooling: aggregate expert forecasts and benchmark the pools"};
    app.require_subcommand(1);

    RunConfig run;
    std::string methods = "consensual,average,bms";
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    SyntheticDatasetSpec synthetic;
    auto* run_cmd = app.add_subcommand("run", "Aggregate every game with the selected methods and write a report");
    run_cmd->add_option("--opinions", run.opinions_path, "Opinions CSV (game_id,expert_id,p_1,...,p_z)");
    run_cmd->add_option("--outcomes", run.outcomes_path, "Outcomes CSV (game_id,winner)");
    run_cmd->add_option("--methods", methods, "Comma-separated subset of consensual,average,bms")
        ->capture_default_str();
    run_cmd->add_option("--epsilon", run.pool.epsilon, "Distance offset in the consensual weights")
        ->capture_default_str();
    run_cmd->add_option("--tolerance", run.pool.tolerance, "Stop once delta falls below this")->capture_default_str();
    run_cmd->add_option("--max-iters", run.pool.max_iterations, "Iteration cap for the consensual pool")
        ->capture_default_str();
    run_cmd->add_option("--bms-clamp", run.pool.bms_clamp, "BMS recalibration bound")->capture_default_str();
    run_cmd->add_option("--report", run.report_path, "Report output path")->required();
    run_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    run_cmd->add_flag("--renormalize", run.renormalize_inputs, "Rescale input rows that do not sum to 1");
    run_cmd->add_flag("--complement", run.derive_complement, "Binary inputs carry only p_1; use p_2 = 1 - p_1");
    run_cmd->add_flag("--trace", run.include_trace, "Include each consensual delta trace in the report");
    run_cmd->add_option("--seed", seed, "Benchmark a synthetic dataset with this seed instead of input files");
    run_cmd->add_option("--games", synthetic.games, "Synthetic mode: number of games")->capture_default_str();
    run_cmd->add_option("--experts", synthetic.experts, "Synthetic mode: experts per game")->capture_default_str();
    run_cmd->add_option("--noise", synthetic.noise, "Synthetic mode: noise scale")->capture_default_str();
    run_cmd->add_option("--outliers", synthetic.outliers, "Synthetic mode: uniform outliers per game")
        ->capture_default_str();

    SyntheticDatasetSpec synth;
    std::filesystem::path out_dir;
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic binary dataset (opinions.csv, outcomes.csv)");
    synth_cmd->add_option("--seed", synth.seed, "Random seed")->required();
    synth_cmd->add_option("--games", synth.games, "Number of games")->capture_default_str();
    synth_cmd->add_option("--experts", synth.experts, "Experts per game")->capture_default_str();
    synth_cmd->add_option("--noise", synth.noise, "Standard deviation of expert noise")->capture_default_str();
    synth_cmd->add_option("--outliers", synth.outliers, "Uniform outliers per game")->capture_default_str();
    synth_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* example_cmd = app.add_subcommand("example", "Replay the three-expert worked example and compare");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : parse_failed;
    }

    if (*run_cmd) {
        try {
            run.methods = parse_methods(methods);
        } catch (const Error& e) {
            std::cerr << "pool: parse failed: " << e.what() << '\n';
            return parse_failed;
        }
        run.report_format = format == "csv" ? ReportFormat::csv : ReportFormat::json;
        if (seed) {
            synthetic.seed = *seed;
            run.synthetic = synthetic;
        } else if (run.opinions_path.empty() || run.outcomes_path.empty()) {
            std::cerr << "pool: parse failed: --opinions and --outcomes are required unless --seed is given\n";
            return parse_failed;
        }
        return run_command(run);
    }
    if (*synth_cmd) return synth_command(synth, out_dir);
    if (*example_cmd) return example_command();
    return parse_failed;
}

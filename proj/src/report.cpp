#include "copool/report.hpp"

#include <cstdio>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "copool/error.hpp"

namespace copool {

using nlohmann::ordered_json;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json to_json(const WilcoxonResult& w) {
    return {{"statistic", w.statistic}, {"p_value", w.p_value}, {"n", w.n}, {"exact", w.exact}};
}

ordered_json to_json(const MethodResult& m) {
    ordered_json games = ordered_json::array();
    for (const auto& g : m.per_game) {
        ordered_json entry{{"game_id", g.game_id},
                           {"aggregate", std::vector<double>(g.aggregate.probs().begin(), g.aggregate.probs().end())},
                           {"absolute_error", g.absolute_error}};
        if (g.iterations) entry["iterations"] = *g.iterations;
        if (!g.delta_trace.empty()) entry["delta_trace"] = g.delta_trace;
        games.push_back(std::move(entry));
    }
    ordered_json skipped = ordered_json::array();
    for (const auto& s : m.skipped_games) skipped.push_back({{"game_id", s.game_id}, {"reason", s.reason}});

    ordered_json accuracy{{"value", nullptr},
                          {"correct", m.accuracy.correct},
                          {"counted", m.accuracy.counted},
                          {"excluded", m.accuracy.excluded}};
    if (m.accuracy.accuracy) accuracy["value"] = *m.accuracy.accuracy;

    return {{"method", m.method_name},
            {"metrics",
             {{"overall_accuracy", std::move(accuracy)},
              {"mean_absolute_error", m.mean_absolute_error},
              {"stddev_absolute_error", m.stddev_absolute_error},
              {"games_scored", m.per_game.size()},
              {"games_skipped", m.skipped_games.size()}}},
            {"games", std::move(games)},
            {"skipped_games", std::move(skipped)},
            {"warnings", m.warnings}};
}

MethodResult method_from_json(const ordered_json& j) {
    MethodResult m;
    m.method_name = j.at("method").get<std::string>();
    const auto& metrics = j.at("metrics");
    const auto& acc = metrics.at("overall_accuracy");
    if (!acc.at("value").is_null()) m.accuracy.accuracy = acc.at("value").get<double>();
    m.accuracy.correct = acc.at("correct").get<std::size_t>();
    m.accuracy.counted = acc.at("counted").get<std::size_t>();
    m.accuracy.excluded = acc.at("excluded").get<std::size_t>();
    m.mean_absolute_error = metrics.at("mean_absolute_error").get<double>();
    m.stddev_absolute_error = metrics.at("stddev_absolute_error").get<double>();
    for (const auto& g : j.at("games")) {
        GameResult r{.game_id = g.at("game_id").get<std::string>(),
                     .aggregate = validate_opinion(g.at("aggregate").get<std::vector<double>>()),
                     .absolute_error = g.at("absolute_error").get<double>()};
        if (g.contains("iterations")) r.iterations = g.at("iterations").get<std::size_t>();
        if (g.contains("delta_trace")) r.delta_trace = g.at("delta_trace").get<std::vector<double>>();
        m.per_game.push_back(std::move(r));
    }
    for (const auto& s : j.at("skipped_games")) {
        m.skipped_games.push_back({s.at("game_id").get<std::string>(), s.at("reason").get<std::string>()});
    }
    m.warnings = j.at("warnings").get<std::vector<std::string>>();
    return m;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(Errc::io_error, "write failed for " + path.string());
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
    const auto& s = report.settings;
    ordered_json doc{{"settings",
                      {{"methods", s.methods},
                       {"epsilon", s.epsilon},
                       {"tolerance", s.tolerance},
                       {"max_iterations", s.max_iterations},
                       {"bms_clamp", s.bms_clamp},
                       {"games", s.games}}}};
    ordered_json methods = ordered_json::array();
    for (const auto& m : report.methods) methods.push_back(to_json(m));
    doc["methods"] = std::move(methods);

    ordered_json pairwise = ordered_json::array();
    for (const auto& p : report.pairwise) {
        ordered_json entry{{"first", p.first},
                           {"second", p.second},
                           {"paired_games", p.paired_games},
                           {"alternative", "first has smaller absolute error"},
                           {"test", nullptr}};
        if (p.test) entry["test"] = to_json(*p.test);
        pairwise.push_back(std::move(entry));
    }
    doc["pairwise"] = std::move(pairwise);
    return doc.dump(2) + "\n";
}

EvaluationReport report_from_json(const std::string& text) {
    EvaluationReport report;
    try {
        const auto doc = ordered_json::parse(text);
        const auto& s = doc.at("settings");
        report.settings = {.methods = s.at("methods").get<std::vector<std::string>>(),
                           .epsilon = s.at("epsilon").get<double>(),
                           .tolerance = s.at("tolerance").get<double>(),
                           .max_iterations = s.at("max_iterations").get<std::size_t>(),
                           .bms_clamp = s.at("bms_clamp").get<double>(),
                           .games = s.at("games").get<std::size_t>()};
        for (const auto& m : doc.at("methods")) report.methods.push_back(method_from_json(m));
        for (const auto& p : doc.at("pairwise")) {
            PairwiseTest pair{.first = p.at("first").get<std::string>(),
                              .second = p.at("second").get<std::string>(),
                              .paired_games = p.at("paired_games").get<std::size_t>(),
                              .test = std::nullopt};
            if (!p.at("test").is_null()) {
                const auto& t = p.at("test");
                pair.test = WilcoxonResult{.statistic = t.at("statistic").get<double>(),
                                           .p_value = t.at("p_value").get<double>(),
                                           .n = t.at("n").get<std::size_t>(),
                                           .exact = t.at("exact").get<bool>()};
            }
            report.pairwise.push_back(std::move(pair));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, std::string("report json: ") + e.what());
    }
    return report;
}

std::string report_to_csv(const EvaluationReport& report) {
    std::size_t z = 0;
    for (const auto& m : report.methods) {
        for (const auto& g : m.per_game) z = std::max(z, g.aggregate.size());
    }
    std::ostringstream out;
    out << "game_id,method";
    for (std::size_t k = 1; k <= z; ++k) out << ",p_" << k;
    out << ",absolute_error\n";
    for (const auto& m : report.methods) {
        for (const auto& g : m.per_game) {
            out << g.game_id << ',' << m.method_name;
            for (double p : g.aggregate.probs()) out << ',' << num(p);
            out << ',' << num(g.absolute_error) << '\n';
        }
    }
    return out.str();
}

std::string report_summary_csv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "method,overall_accuracy,correct,counted,excluded,mean_absolute_error,stddev_absolute_error,"
           "games_scored,games_skipped\n";
    for (const auto& m : report.methods) {
        out << m.method_name << ',' << (m.accuracy.accuracy ? num(*m.accuracy.accuracy) : "") << ','
            << m.accuracy.correct << ',' << m.accuracy.counted << ',' << m.accuracy.excluded << ','
            << num(m.mean_absolute_error) << ',' << num(m.stddev_absolute_error) << ',' << m.per_game.size()
            << ',' << m.skipped_games.size() << '\n';
    }
    out << '\n' << "first,second,paired_games,statistic,p_value,n,exact\n";
    for (const auto& p : report.pairwise) {
        out << p.first << ',' << p.second << ',' << p.paired_games << ',';
        if (p.test) {
            out << num(p.test->statistic) << ',' << num(p.test->p_value) << ',' << p.test->n << ','
                << (p.test->exact ? "true" : "false");
        } else {
            out << ",,0,";
        }
        out << '\n';
    }
    return out.str();
}

std::filesystem::path summary_path_for(const std::filesystem::path& report_path) {
    std::filesystem::path p = report_path;
    p += ".summary.csv";
    return p;
}

void emit_report(const EvaluationReport& report, ReportFormat format, const std::filesystem::path& path) {
    switch (format) {
        case ReportFormat::json:
            write_file(path, report_to_json(report));
            return;
        case ReportFormat::csv:
            write_file(path, report_to_csv(report));
            write_file(summary_path_for(path), report_summary_csv(report));
            return;
    }
    throw Error(Errc::invalid_argument, "unknown report format");
}

}  // namespace copool

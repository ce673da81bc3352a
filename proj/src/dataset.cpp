#include "copool/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>

#include "copool/error.hpp"

namespace copool {

namespace {

std::string where(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ":" + std::to_string(line) + ": ";
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<std::size_t> parse_index(std::string_view s) {
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
    return v;
}

// Yields (line number, content, header field count) for non-blank lines after the header.
template <typename Fn>
void for_each_row(const std::filesystem::path& path, std::string_view expected_prefix, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
    std::string line;
    std::size_t number = 0;
    bool header = true;
    std::size_t header_fields = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string_view content = trim(line);
        if (content.empty()) continue;
        if (header) {
            if (!content.starts_with(expected_prefix)) {
                throw Error(Errc::parse_error, where(path, number) + "expected header starting with '" +
                                                   std::string(expected_prefix) + "'");
            }
            header = false;
            header_fields = split(content).size();
            continue;
        }
        fn(number, content, header_fields);
    }
    if (header) throw Error(Errc::parse_error, path.string() + ": missing header");
}

struct PendingGame {
    std::string id;
    std::vector<std::string> experts;
    std::vector<Opinion> opinions;
    std::set<std::string, std::less<>> seen;
};

}  // namespace

std::vector<GameRecord> load_dataset(const std::filesystem::path& opinions_path,
                                     const std::filesystem::path& outcomes_path,
                                     const LoadOptions& options) {
    std::vector<PendingGame> pending;
    std::unordered_map<std::string, std::size_t> game_index;

    const auto on_opinion = [&](std::size_t line, std::string_view content, std::size_t columns) {
        const auto fields = split(content);
        if (fields.size() != columns) {
            throw Error(Errc::parse_error, where(opinions_path, line) + "expected " + std::to_string(columns) +
                                               " fields, got " + std::to_string(fields.size()));
        }
        const std::size_t given = fields.size() < 2 ? 0 : fields.size() - 2;
        if (given == 0 || (given == 1 && !options.derive_complement)) {
            throw Error(Errc::parse_error,
                        where(opinions_path, line) + "need at least two probabilities (or one with the complement option)");
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw Error(Errc::parse_error, where(opinions_path, line) + "empty game_id or expert_id");
        }

        std::vector<double> probs;
        for (std::size_t k = 2; k < fields.size(); ++k) {
            const auto v = parse_double(fields[k]);
            if (!v) {
                throw Error(Errc::parse_error, where(opinions_path, line) + "cannot parse probability '" +
                                                   std::string(fields[k]) + "'");
            }
            probs.push_back(*v);
        }
        if (probs.size() == 1) probs.push_back(1.0 - probs[0]);

        if (options.renormalize) {
            double total = 0.0;
            for (double p : probs) {
                if (!(p >= 0.0) || !std::isfinite(p)) {
                    throw Error(Errc::entry_out_of_range,
                                where(opinions_path, line) + "negative or non-finite probability cannot be renormalized");
                }
                total += p;
            }
            if (!(total > 0.0)) {
                throw Error(Errc::sum_not_one, where(opinions_path, line) + "all-zero row cannot be renormalized");
            }
            for (double& p : probs) p /= total;
        }

        Opinion opinion = [&] {
            try {
                return validate_opinion(std::move(probs));
            } catch (const Error& e) {
                throw Error(e.code(), where(opinions_path, line) + e.what());
            }
        }();

        const std::string id(fields[0]);
        auto [it, inserted] = game_index.try_emplace(id, pending.size());
        if (inserted) pending.push_back({.id = id, .experts = {}, .opinions = {}, .seen = {}});
        PendingGame& game = pending[it->second];
        if (!game.seen.emplace(fields[1]).second) {
            throw Error(Errc::duplicate_entry, where(opinions_path, line) + "duplicate expert '" +
                                                   std::string(fields[1]) + "' for game '" + id + "'");
        }
        game.experts.emplace_back(fields[1]);
        game.opinions.push_back(std::move(opinion));
    };
    for_each_row(opinions_path, "game_id,expert_id", on_opinion);

    std::vector<std::optional<Outcome>> winners(pending.size());
    for_each_row(outcomes_path, "game_id,winner", [&](std::size_t line, std::string_view content, std::size_t) {
        const auto fields = split(content);
        if (fields.size() != 2) {
            throw Error(Errc::parse_error, where(outcomes_path, line) + "expected 2 fields, got " +
                                               std::to_string(fields.size()));
        }
        const auto it = game_index.find(std::string(fields[0]));
        if (it == game_index.end()) {
            throw Error(Errc::empty_panel, where(outcomes_path, line) + "game '" + std::string(fields[0]) +
                                               "' has no opinions");
        }
        const auto winner = parse_index(fields[1]);
        const std::size_t z = pending[it->second].opinions.front().size();
        if (!winner || *winner < 1 || *winner > z) {
            throw Error(Errc::outcome_out_of_range, where(outcomes_path, line) + "winner '" +
                                                        std::string(fields[1]) + "' is not in 1.." +
                                                        std::to_string(z));
        }
        if (winners[it->second]) {
            throw Error(Errc::duplicate_entry, where(outcomes_path, line) + "second outcome for game '" +
                                                   std::string(fields[0]) + "'");
        }
        winners[it->second] = Outcome::one_based(*winner);
    });

    std::vector<GameRecord> games;
    games.reserve(pending.size());
    for (std::size_t g = 0; g < pending.size(); ++g) {
        if (!winners[g]) {
            throw Error(Errc::missing_outcome, outcomes_path.string() + ": no outcome for game '" + pending[g].id + "'");
        }
        games.push_back({.game_id = pending[g].id,
                         .panel = OpinionPanel(pending[g].opinions),
                         .winner = *winners[g],
                         .expert_ids = std::move(pending[g].experts)});
    }
    return games;
}

void write_dataset(std::span<const GameRecord> games, const std::filesystem::path& opinions_path,
                   const std::filesystem::path& outcomes_path) {
    if (games.empty()) throw Error(Errc::empty_input, "write_dataset: no games");
    const std::size_t z = games.front().panel.z();
    std::ofstream opinions(opinions_path, std::ios::binary);
    std::ofstream outcomes(outcomes_path, std::ios::binary);
    if (!opinions) throw Error(Errc::io_error, "cannot write " + opinions_path.string());
    if (!outcomes) throw Error(Errc::io_error, "cannot write " + outcomes_path.string());

    opinions << "game_id,expert_id";
    for (std::size_t k = 1; k <= z; ++k) opinions << ",p_" << k;
    opinions << '\n';
    outcomes << "game_id,winner\n";

    char buf[32];
    for (const auto& game : games) {
        if (game.panel.z() != z) throw Error(Errc::dimension_mismatch, "write_dataset: mixed outcome counts");
        for (std::size_t i = 0; i < game.panel.n(); ++i) {
            opinions << game.game_id << ','
                     << (i < game.expert_ids.size() ? game.expert_ids[i] : "E" + std::to_string(i + 1));
            for (double p : game.panel.row(i)) {
                std::snprintf(buf, sizeof buf, "%.17g", p);
                opinions << ',' << buf;
            }
            opinions << '\n';
        }
        outcomes << game.game_id << ',' << game.winner.one_based_index() << '\n';
    }
    if (!opinions || !outcomes) throw Error(Errc::io_error, "write_dataset: write failed");
}

}  // namespace copool

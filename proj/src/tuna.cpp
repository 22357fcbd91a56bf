#include "incrsa/tuna.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>

#include "incrsa/agents.hpp"
#include "incrsa/errors.hpp"
#include "incrsa/game_io.hpp"
#include "incrsa/trie.hpp"

namespace incrsa::tuna {

const Entity& Trial::target() const {
    for (const Entity& e : entities) {
        if (e.is_target) return e;
    }
    throw QueryError("trial " + id + " has no target entity");
}

std::string sanitize_token(std::string text) {
    // Attribute names/values become vocabulary words; whitespace would break
    // space-joined utterance forms and CLI context parsing.
    for (char& c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) c = '_';
    }
    return text;
}

std::string attribute_word(const std::string& name, const std::string& value) {
    return sanitize_token(name) + ":" + sanitize_token(value);
}

std::pair<std::string, std::string> split_attribute_word(const std::string& token) {
    auto pos = token.find(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == token.size()) {
        throw ValidationError("attribute word must be name:value, got " + token);
    }
    return {token.substr(0, pos), token.substr(pos + 1)};
}

namespace {

CorpusLoad load_fixture_json_impl(const nlohmann::json& doc) {
    CorpusLoad load;
    if (!doc.is_object() || !doc.contains("trials")) {
        throw ValidationError("fixture: missing field trials");
    }
    std::string domain = doc.value("domain", std::string());
    for (const nlohmann::json& t : doc.at("trials")) {
        Trial trial;
        trial.id = t.at("id").get<std::string>();
        trial.domain = t.value("domain", domain);
        for (const nlohmann::json& e : t.at("entities")) {
            Entity entity;
            entity.id = e.at("id").get<std::string>();
            entity.is_target = e.value("target", false);
            for (const auto& [k, v] : e.at("attributes").items()) {
                entity.attributes[sanitize_token(k)] =
                    sanitize_token(v.get<std::string>());
            }
            trial.entities.push_back(std::move(entity));
        }
        for (const nlohmann::json& w : t.at("description")) {
            std::string token = sanitize_token(w.get<std::string>());
            split_attribute_word(token);  // shape check
            trial.description.push_back(std::move(token));
        }
        int targets = 0;
        for (const Entity& e : trial.entities) targets += e.is_target ? 1 : 0;
        if (targets == 0) {
            throw ValidationError("fixture: trial " + trial.id + " has no target");
        }
        if (targets > 1) {
            load.dropped_multi_target += 1;
            continue;
        }
        if (trial.description.empty()) {
            throw ValidationError("fixture: trial " + trial.id + " has empty description");
        }
        load.trials.push_back(std::move(trial));
    }
    std::stable_sort(load.trials.begin(), load.trials.end(),
                     [](const Trial& a, const Trial& b) { return a.id < b.id; });
    if (load.trials.empty()) {
        throw ParseError("fixture contains no usable trial");
    }
    return load;
}

}  // namespace

CorpusLoad load_fixture_json(const nlohmann::json& doc) {
    try {
        return load_fixture_json_impl(doc);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("fixture: ") + e.what());
    }
}

CorpusLoad load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read fixture file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("fixture " + path + ": " + e.what());
    }
    return load_fixture_json(doc);
}

std::vector<std::vector<std::string>> build_inventory(const std::vector<Trial>& trials) {
    std::set<std::vector<std::string>> seen;
    for (const Trial& trial : trials) {
        if (trial.description.size() <= 2) {
            seen.insert(trial.description);
        }
    }
    return {seen.begin(), seen.end()};
}

ReferenceGame build_trial_game(const Trial& trial,
                               const std::vector<std::vector<std::string>>& inventory) {
    auto word_true_of = [](const std::string& token, const Entity& entity) {
        auto [name, value] = split_attribute_word(token);
        auto it = entity.attributes.find(name);
        return it != entity.attributes.end() && it->second == value;
    };
    auto compatible = [&](const std::vector<std::string>& utterance) {
        for (const Entity& entity : trial.entities) {
            bool all = true;
            for (const std::string& token : utterance) {
                if (!word_true_of(token, entity)) {
                    all = false;
                    break;
                }
            }
            if (all) return true;
        }
        return false;
    };

    GameBuilder builder;
    for (const Entity& entity : trial.entities) {
        builder.world(entity.id, entity.attributes);
    }
    bool any = false;
    std::set<std::string> lexemes;
    for (const auto& utterance : inventory) {
        if (!compatible(utterance)) continue;
        any = true;
        builder.utterance(utterance);
        for (const std::string& token : utterance) {
            if (lexemes.insert(token).second) {
                auto [name, value] = split_attribute_word(token);
                builder.lexeme(token, {{name, value}});
            }
        }
    }
    if (!any) {
        throw QueryError("trial " + trial.id + ": no compatible utterance in inventory");
    }
    builder.word_cost_default(1.0).stop_cost(0.0);
    return builder.build();
}

ExperimentReport run_experiment(const std::vector<Trial>& trials,
                                const std::vector<std::vector<std::string>>& inventory,
                                const std::string& domain, double tie_epsilon) {
    ExperimentReport report;
    report.domain = domain;
    for (const Trial& trial : trials) {
        TrialPrediction prediction;
        prediction.trial_id = trial.id;
        ReferenceGame game;
        try {
            game = build_trial_game(trial, inventory);
        } catch (const QueryError&) {
            prediction.usable = false;
            report.unusable += 1;
            report.per_trial.push_back(std::move(prediction));
            continue;
        }
        int target = game.world_index(trial.target().id);
        UtteranceTrie trie = UtteranceTrie::build(game);

        Distribution gp = pragmatic_speaker_gp(game, target);
        Distribution ip = speaker_utt_ip(game, trie, target);
        for (std::size_t i : optimal_utterances(gp, tie_epsilon)) {
            prediction.gp_optimal.push_back(gp.label_at(i));
            if (game.inventory[i].words.size() == 2) prediction.gp_two_word += 1;
        }
        for (std::size_t i : optimal_utterances(ip, tie_epsilon)) {
            prediction.ip_optimal.push_back(ip.label_at(i));
            if (game.inventory[i].words.size() == 2) prediction.ip_two_word += 1;
        }
        report.trial_count += 1;
        report.gp_two_word_optima += prediction.gp_two_word;
        report.ip_two_word_optima += prediction.ip_two_word;
        report.per_trial.push_back(std::move(prediction));
    }
    return report;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
    nlohmann::json doc;
    doc["domain"] = report.domain;
    doc["trial_count"] = report.trial_count;
    doc["unusable"] = report.unusable;
    doc["gp_two_word_optima"] = report.gp_two_word_optima;
    doc["ip_two_word_optima"] = report.ip_two_word_optima;
    doc["per_trial"] = nlohmann::json::array();
    for (const TrialPrediction& p : report.per_trial) {
        nlohmann::json t;
        t["trial_id"] = p.trial_id;
        t["usable"] = p.usable;
        t["gp_optimal"] = p.gp_optimal;
        t["ip_optimal"] = p.ip_optimal;
        t["gp_two_word"] = p.gp_two_word;
        t["ip_two_word"] = p.ip_two_word;
        doc["per_trial"].push_back(std::move(t));
    }
    return doc;
}

void print_report_table(const ExperimentReport& report, std::ostream& out) {
    out << std::left << std::setw(11) << "domain" << std::right << std::setw(7)
        << "trials" << std::setw(6) << "gp2w" << std::setw(6) << "ip2w" << "\n";
    out << std::left << std::setw(11) << report.domain << std::right << std::setw(7)
        << report.trial_count << std::setw(6) << report.gp_two_word_optima
        << std::setw(6) << report.ip_two_word_optima << "\n";
    out << "trials=" << report.trial_count << " gp=" << report.gp_two_word_optima
        << " ip=" << report.ip_two_word_optima << "\n";
}

}  // namespace incrsa::tuna

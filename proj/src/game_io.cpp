#include "incrsa/game_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "incrsa/errors.hpp"

namespace incrsa {

namespace {

using nlohmann::json;

const json& require_field(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw ValidationError(std::string("missing field: ") + key);
    }
    return *it;
}

bool has_whitespace(const std::string& s) {
    for (unsigned char c : s) {
        if (std::isspace(c)) return true;
    }
    return false;
}

std::vector<World> parse_worlds(const json& doc) {
    const json& arr = require_field(doc, "worlds");
    if (!arr.is_array() || arr.empty()) {
        throw ValidationError("worlds: must be a non-empty array");
    }
    std::vector<World> worlds;
    std::set<std::string> seen;
    for (const json& item : arr) {
        World w;
        if (item.is_string()) {
            w.id = item.get<std::string>();
        } else if (item.is_object()) {
            w.id = require_field(item, "id").get<std::string>();
            if (item.contains("attributes")) {
                for (const auto& [k, v] : item.at("attributes").items()) {
                    w.attributes[k] = v.get<std::string>();
                }
            }
        } else {
            throw ValidationError("worlds: entries must be ids or objects");
        }
        if (w.id.empty()) throw ValidationError("worlds: empty id");
        if (!seen.insert(w.id).second) {
            throw ValidationError("worlds: duplicate id " + w.id);
        }
        worlds.push_back(std::move(w));
    }
    return worlds;
}

std::vector<Word> parse_vocabulary(const json& doc) {
    const json& arr = require_field(doc, "vocabulary");
    if (!arr.is_array() || arr.empty()) {
        throw ValidationError("vocabulary: must be a non-empty array");
    }
    std::vector<Word> vocab;
    std::set<std::string> seen;
    for (const json& item : arr) {
        Word w;
        w.surface = item.get<std::string>();
        if (w.surface.empty()) throw ValidationError("vocabulary: empty word");
        if (has_whitespace(w.surface)) {
            throw ValidationError("vocabulary: word contains whitespace: " + w.surface);
        }
        if (w.surface == kStopSurface) {
            throw ValidationError(
                "vocabulary: the stop word is implicit and must not be listed");
        }
        if (!seen.insert(w.surface).second) {
            throw ValidationError("vocabulary: duplicate word " + w.surface);
        }
        vocab.push_back(std::move(w));
    }
    vocab.push_back(Word{kStopSurface, /*is_stop=*/true});
    return vocab;
}

ReferenceGame load_game_impl(const json& doc) {
    if (!doc.is_object()) {
        throw ValidationError("document: must be a JSON object");
    }
    ReferenceGame game;
    game.worlds = parse_worlds(doc);
    game.vocabulary = parse_vocabulary(doc);
    game.stop_index = static_cast<int>(game.vocabulary.size()) - 1;

    const json& utts = require_field(doc, "utterances");
    if (!utts.is_array() || utts.empty()) {
        throw ValidationError("utterances: must be a non-empty array");
    }
    std::set<std::vector<int>> seen_sequences;
    for (const json& seq : utts) {
        if (!seq.is_array() || seq.empty()) {
            throw ValidationError("utterances: each utterance is a non-empty word array");
        }
        Utterance u;
        for (const json& tok : seq) {
            std::string surface = tok.get<std::string>();
            if (surface == kStopSurface) {
                throw ValidationError("utterances: stop token may not appear inside an utterance");
            }
            int idx = game.word_index(surface);
            if (idx < 0) {
                throw ValidationError("utterances: unknown word " + surface);
            }
            u.words.push_back(idx);
        }
        if (!seen_sequences.insert(u.words).second) {
            throw ValidationError("utterances: duplicate utterance " +
                                  game.words_text(u.words));
        }
        game.inventory.push_back(std::move(u));
    }

    // Semantics: explicit table or lexical conjunction, expanded eagerly.
    const json& sem = require_field(doc, "semantics");
    std::string mode = require_field(sem, "mode").get<std::string>();
    game.truth.assign(game.inventory.size(),
                      std::vector<std::uint8_t>(game.worlds.size(), 0));
    if (mode == "table") {
        game.semantics_mode = SemanticsMode::kTable;
        for (const json& pair : require_field(sem, "true_pairs")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ValidationError("semantics.true_pairs: entries are [utterance, world]");
            }
            std::string joined = pair[0].get<std::string>();
            std::string world_id = pair[1].get<std::string>();
            int u = game.utterance_index(joined);
            if (u < 0) {
                throw ValidationError("semantics.true_pairs: unknown utterance " + joined);
            }
            int w = game.world_index(world_id);
            if (w < 0) {
                throw ValidationError("semantics.true_pairs: unknown world " + world_id);
            }
            game.truth[u][w] = 1;
        }
    } else if (mode == "lexical") {
        game.semantics_mode = SemanticsMode::kLexical;
        for (const auto& [word, req] : require_field(sem, "lexicon").items()) {
            int idx = game.word_index(word);
            if (idx < 0 || idx == game.stop_index) {
                throw ValidationError("semantics.lexicon: unknown word " + word);
            }
            std::map<std::string, std::string> required;
            for (const auto& [attr, value] : req.items()) {
                required[attr] = value.get<std::string>();
            }
            game.lexicon[word] = std::move(required);
        }
        for (const Word& w : game.vocabulary) {
            if (!w.is_stop && !game.lexicon.count(w.surface)) {
                throw ValidationError("semantics.lexicon: no entry for word " + w.surface);
            }
        }
        for (std::size_t u = 0; u < game.inventory.size(); ++u) {
            for (std::size_t w = 0; w < game.worlds.size(); ++w) {
                game.truth[u][w] =
                    lexical_truth(game, game.inventory[u].words, game.worlds[w]) ? 1 : 0;
            }
        }
    } else {
        throw ValidationError("semantics.mode: expected \"table\" or \"lexical\"");
    }

    // Costs: additive per word, separate stop cost, all finite and >= 0.
    if (doc.contains("costs")) {
        const json& costs = doc.at("costs");
        if (costs.contains("default_word")) {
            game.costs.default_word = costs.at("default_word").get<double>();
        }
        if (costs.contains("stop")) {
            game.costs.stop = costs.at("stop").get<double>();
        }
        if (costs.contains("overrides")) {
            for (const auto& [word, c] : costs.at("overrides").items()) {
                if (game.word_index(word) < 0) {
                    throw ValidationError("costs.overrides: unknown word " + word);
                }
                game.costs.overrides[word] = c.get<double>();
            }
        }
    }
    auto check_cost = [](const std::string& field, double c) {
        if (!std::isfinite(c) || c < 0.0) {
            throw ValidationError(field + ": cost must be finite and >= 0");
        }
    };
    check_cost("costs.default_word", game.costs.default_word);
    check_cost("costs.stop", game.costs.stop);
    for (const auto& [word, c] : game.costs.overrides) {
        check_cost("costs.overrides." + word, c);
    }
    game.word_costs.resize(game.vocabulary.size());
    for (std::size_t i = 0; i < game.vocabulary.size(); ++i) {
        game.word_costs[i] = game.vocabulary[i].is_stop
                                 ? game.costs.stop
                                 : game.costs.word_cost(game.vocabulary[i].surface);
    }

    // Prior: uniform unless overridden; must sum to 1.
    game.prior.assign(game.worlds.size(), 1.0 / game.worlds.size());
    game.prior_is_uniform = true;
    if (doc.contains("prior") && !(doc.at("prior").is_string() &&
                                   doc.at("prior").get<std::string>() == "uniform")) {
        const json& prior = doc.at("prior");
        if (!prior.is_object()) {
            throw ValidationError("prior: expected \"uniform\" or a world->mass object");
        }
        game.prior.assign(game.worlds.size(), 0.0);
        game.prior_is_uniform = false;
        double total = 0.0;
        for (const auto& [world_id, mass] : prior.items()) {
            int w = game.world_index(world_id);
            if (w < 0) throw ValidationError("prior: unknown world " + world_id);
            double p = mass.get<double>();
            if (!std::isfinite(p) || p < 0.0) {
                throw ValidationError("prior: mass must be finite and >= 0");
            }
            game.prior[w] = p;
            total += p;
        }
        if (std::fabs(total - 1.0) > 1e-9) {
            throw ValidationError("prior: mass must sum to 1");
        }
    }
    return game;
}

}  // namespace

ReferenceGame load_game(const json& doc) {
    try {
        return load_game_impl(doc);
    } catch (const json::exception& e) {
        // Structurally valid JSON with a wrongly typed field.
        throw ValidationError(std::string("document: ") + e.what());
    }
}

ReferenceGame load_game_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("game document: ") + e.what());
    }
    return load_game(doc);
}

ReferenceGame load_game_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot read game file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_game_text(buffer.str());
}

json save_game(const ReferenceGame& game) {
    json doc;
    doc["worlds"] = json::array();
    for (const World& w : game.worlds) {
        json item;
        item["id"] = w.id;
        if (!w.attributes.empty()) {
            item["attributes"] = w.attributes;
        }
        doc["worlds"].push_back(std::move(item));
    }
    doc["vocabulary"] = json::array();
    for (const Word& w : game.vocabulary) {
        if (!w.is_stop) doc["vocabulary"].push_back(w.surface);
    }
    doc["utterances"] = json::array();
    for (const Utterance& u : game.inventory) {
        json seq = json::array();
        for (int wi : u.words) seq.push_back(game.vocabulary[wi].surface);
        doc["utterances"].push_back(std::move(seq));
    }
    json sem;
    if (game.semantics_mode == SemanticsMode::kTable) {
        sem["mode"] = "table";
        json pairs = json::array();
        for (std::size_t u = 0; u < game.inventory.size(); ++u) {
            for (std::size_t w = 0; w < game.worlds.size(); ++w) {
                if (game.truth[u][w]) {
                    pairs.push_back(json::array({game.utterance_text(static_cast<int>(u)),
                                                 game.worlds[w].id}));
                }
            }
        }
        sem["true_pairs"] = std::move(pairs);
    } else {
        sem["mode"] = "lexical";
        json lex = json::object();
        for (const auto& [word, required] : game.lexicon) {
            lex[word] = required;
        }
        sem["lexicon"] = std::move(lex);
    }
    doc["semantics"] = std::move(sem);
    doc["costs"] = {{"default_word", game.costs.default_word},
                    {"overrides", game.costs.overrides},
                    {"stop", game.costs.stop}};
    if (game.prior_is_uniform) {
        doc["prior"] = "uniform";
    } else {
        json prior = json::object();
        for (std::size_t w = 0; w < game.worlds.size(); ++w) {
            prior[game.worlds[w].id] = game.prior[w];
        }
        doc["prior"] = std::move(prior);
    }
    return doc;
}

GameBuilder& GameBuilder::world(std::string id,
                                std::map<std::string, std::string> attributes) {
    nlohmann::json item;
    item["id"] = std::move(id);
    if (!attributes.empty()) item["attributes"] = std::move(attributes);
    worlds_.push_back(std::move(item));
    return *this;
}

GameBuilder& GameBuilder::vocabulary(std::vector<std::string> words) {
    vocabulary_ = std::move(words);
    return *this;
}

GameBuilder& GameBuilder::utterance(std::vector<std::string> words) {
    for (const std::string& w : words) {
        if (std::find(vocabulary_.begin(), vocabulary_.end(), w) == vocabulary_.end()) {
            vocabulary_.push_back(w);
        }
    }
    utterances_.push_back(words);
    return *this;
}

GameBuilder& GameBuilder::true_pair(std::string utterance_joined, std::string world_id) {
    true_pairs_.push_back(
        nlohmann::json::array({std::move(utterance_joined), std::move(world_id)}));
    return *this;
}

GameBuilder& GameBuilder::lexeme(std::string word,
                                 std::map<std::string, std::string> required) {
    lexical_ = true;
    lexicon_[std::move(word)] = std::move(required);
    return *this;
}

GameBuilder& GameBuilder::word_cost_default(double c) {
    default_word_cost_ = c;
    return *this;
}

GameBuilder& GameBuilder::word_cost_override(std::string word, double c) {
    cost_overrides_[std::move(word)] = c;
    return *this;
}

GameBuilder& GameBuilder::stop_cost(double c) {
    stop_cost_ = c;
    return *this;
}

GameBuilder& GameBuilder::prior(std::map<std::string, double> mass) {
    prior_ = nlohmann::json(std::move(mass));
    return *this;
}

nlohmann::json GameBuilder::document() const {
    nlohmann::json doc;
    doc["worlds"] = worlds_;
    doc["vocabulary"] = vocabulary_;
    doc["utterances"] = utterances_;
    if (lexical_) {
        doc["semantics"] = {{"mode", "lexical"}, {"lexicon", lexicon_}};
    } else {
        doc["semantics"] = {{"mode", "table"}, {"true_pairs", true_pairs_}};
    }
    doc["costs"] = {{"default_word", default_word_cost_},
                    {"overrides", cost_overrides_},
                    {"stop", stop_cost_}};
    doc["prior"] = prior_;
    return doc;
}

}  // namespace incrsa

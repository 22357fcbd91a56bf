#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "incrsa/game.hpp"

namespace incrsa {

// Parses and validates a game-spec JSON document.
//
// {
//   "worlds": [{"id": "R1", "attributes": {"colour": "red"}}, ...],
//   "vocabulary": ["dress", "red", "object"],   // stop word implicit
//   "utterances": [["dress"], ["red","dress"]],
//   "semantics": {"mode": "table", "true_pairs": [["red dress","R1"], ...]}
//              | {"mode": "lexical", "lexicon": {"red": {"colour": "red"}}},
//   "costs": {"default_word": 0.0, "overrides": {}, "stop": 0.0},
//   "prior": "uniform" | {"R1": 0.5, ...}
// }
//
// "costs" defaults to all-zero and "prior" to uniform when absent. Lexical
// semantics are expanded to the explicit truth table at load. Throws
// ParseError on malformed JSON and ValidationError on invariant breaches;
// messages name the offending field.
ReferenceGame load_game(const nlohmann::json& doc);
ReferenceGame load_game_text(std::string_view text);
ReferenceGame load_game_file(const std::string& path);

// Serializes back to the game-spec format. load_game(save_game(g)) == g.
nlohmann::json save_game(const ReferenceGame& game);

// Assembles a game-spec document programmatically and runs it through the
// same loader as file input, so built-in fixtures obey the exact format.
class GameBuilder {
  public:
    GameBuilder& world(std::string id,
                       std::map<std::string, std::string> attributes = {});
    GameBuilder& vocabulary(std::vector<std::string> words);
    GameBuilder& utterance(std::vector<std::string> words);
    GameBuilder& true_pair(std::string utterance_joined, std::string world_id);
    GameBuilder& lexeme(std::string word,
                        std::map<std::string, std::string> required);
    GameBuilder& word_cost_default(double c);
    GameBuilder& word_cost_override(std::string word, double c);
    GameBuilder& stop_cost(double c);
    GameBuilder& prior(std::map<std::string, double> mass);

    nlohmann::json document() const;
    ReferenceGame build() const { return load_game(document()); }

  private:
    nlohmann::json worlds_ = nlohmann::json::array();
    std::vector<std::string> vocabulary_;
    nlohmann::json utterances_ = nlohmann::json::array();
    nlohmann::json true_pairs_ = nlohmann::json::array();
    nlohmann::json lexicon_ = nlohmann::json::object();
    bool lexical_ = false;
    double default_word_cost_ = 0.0;
    nlohmann::json cost_overrides_ = nlohmann::json::object();
    double stop_cost_ = 0.0;
    nlohmann::json prior_ = "uniform";
};

}  // namespace incrsa

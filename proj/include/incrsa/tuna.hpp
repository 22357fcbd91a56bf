#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "incrsa/game.hpp"

namespace incrsa::tuna {

// One image in a trial's context set, coded as an attribute dictionary.
struct Entity {
    std::string id;
    bool is_target = false;
    std::map<std::string, std::string> attributes;

    bool operator==(const Entity&) const = default;
};

// A single referring-expression trial: the context set plus the attested
// description as attribute words in annotated order.
struct Trial {
    std::string id;
    std::string domain;  // "furniture" | "people"
    std::vector<Entity> entities;              // exactly one target
    std::vector<std::string> description;      // attribute words, e.g. "colour:grey"

    const Entity& target() const;
    bool operator==(const Trial&) const = default;
};

// Attribute word token: NAME ":" VALUE. The word is true of an entity iff the
// entity's attribute map contains exactly that pair. Whitespace inside names
// or values becomes '_' so tokens stay single words.
std::string sanitize_token(std::string text);
std::string attribute_word(const std::string& name, const std::string& value);
std::pair<std::string, std::string> split_attribute_word(const std::string& token);

struct CorpusLoad {
    std::vector<Trial> trials;  // sorted by trial id
    int dropped_multi_target = 0;
    std::vector<std::string> file_errors;  // per-file problems; parse continues
};

// Reads a directory tree of TUNA trial documents (published REG-challenge
// XML layout: TRIAL with ENTITY elements carrying ATTRIBUTE children, and a
// DESCRIPTION holding an ATTRIBUTE-SET). Files whose TRIAL carries a DOMAIN
// attribute different from `domain` are skipped. Throws ParseError when the
// tree yields no usable trial.
CorpusLoad parse_corpus(const std::string& root, const std::string& domain);

// Fixture alternative: a JSON mirror of the trial list, so experiments run
// without the corpus. Format:
// {"domain": "furniture",
//  "trials": [{"id": "t1",
//              "entities": [{"id": "e1", "target": true,
//                            "attributes": {"colour": "grey"}}, ...],
//              "description": ["colour:grey", "type:desk"]}, ...]}
CorpusLoad load_fixture(const std::string& path);
CorpusLoad load_fixture_json(const nlohmann::json& doc);

// Deduplicated attested descriptions of length <= 2, in attested word order,
// sorted for determinism.
std::vector<std::vector<std::string>> build_inventory(const std::vector<Trial>& trials);

// Per-trial reference game: worlds are the trial's entities, utterances the
// inventory members true of at least one entity under conjunctive attribute
// semantics, word cost 1.0, stop cost 0.0, uniform prior. Throws QueryError
// when no inventory utterance is compatible with the trial.
ReferenceGame build_trial_game(const Trial& trial,
                               const std::vector<std::vector<std::string>>& inventory);

struct TrialPrediction {
    std::string trial_id;
    bool usable = true;
    std::vector<std::string> gp_optimal;  // joined utterances
    std::vector<std::string> ip_optimal;
    int gp_two_word = 0;
    int ip_two_word = 0;
};

struct ExperimentReport {
    std::string domain;
    int trial_count = 0;    // usable trials
    int unusable = 0;       // trials with no compatible utterance
    int gp_two_word_optima = 0;
    int ip_two_word_optima = 0;
    std::vector<TrialPrediction> per_trial;
};

// Predicts the optimal-utterance sets of both speakers for every trial's
// target and counts two-word members across trials.
ExperimentReport run_experiment(const std::vector<Trial>& trials,
                                const std::vector<std::vector<std::string>>& inventory,
                                const std::string& domain,
                                double tie_epsilon = 1e-9);

nlohmann::json report_to_json(const ExperimentReport& report);
void print_report_table(const ExperimentReport& report, std::ostream& out);

}  // namespace incrsa::tuna

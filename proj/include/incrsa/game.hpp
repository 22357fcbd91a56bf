#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace incrsa {

// Reserved terminator surface. Never a member of utterance inventories;
// synthesized as the trie's terminal edge.
inline constexpr const char* kStopSurface = "<stop>";

struct World {
    std::string id;
    std::map<std::string, std::string> attributes;

    bool operator==(const World&) const = default;
};

struct Word {
    std::string surface;
    bool is_stop = false;

    bool operator==(const Word&) const = default;
};

// Ordered sequence of non-stop vocabulary indices, length >= 1.
struct Utterance {
    std::vector<int> words;

    auto operator<=>(const Utterance&) const = default;
};

struct CostModel {
    double default_word = 0.0;
    std::map<std::string, double> overrides;  // by surface
    double stop = 0.0;

    double word_cost(const std::string& surface) const {
        auto it = overrides.find(surface);
        return it == overrides.end() ? default_word : it->second;
    }

    bool operator==(const CostModel&) const = default;
};

enum class SemanticsMode { kTable, kLexical };

// word surface -> required attribute/value pairs (conjunction).
using Lexicon = std::map<std::string, std::map<std::string, std::string>>;

// A finite reference game: worlds, vocabulary (stop word last), utterance
// inventory, boolean semantics expanded to an explicit truth table, additive
// word costs, and a prior over worlds. Immutable after load; every operation
// on it is a pure function, safe to evaluate concurrently.
struct ReferenceGame {
    std::vector<World> worlds;
    std::vector<Word> vocabulary;  // includes the stop word, at stop_index
    int stop_index = -1;
    std::vector<Utterance> inventory;

    SemanticsMode semantics_mode = SemanticsMode::kTable;
    Lexicon lexicon;                                // kLexical only
    std::vector<std::vector<std::uint8_t>> truth;   // [utterance][world]

    CostModel costs;
    std::vector<double> word_costs;  // per vocabulary index (stop included)

    std::vector<double> prior;  // per world, sums to 1
    bool prior_is_uniform = true;

    int world_index(std::string_view id) const;       // -1 when absent
    int word_index(std::string_view surface) const;   // -1 when absent

    // Index of an inventory utterance by space-joined surface form; -1 when
    // absent.
    int utterance_index(std::string_view joined) const;
    int utterance_index(const Utterance& u) const;

    bool truth_of(int utterance, int world) const {
        return truth[utterance][world] != 0;
    }

    // Sum of member word costs, plus the stop cost when include_stop.
    double utterance_cost(const Utterance& u, bool include_stop) const;

    std::string utterance_text(int utterance) const;
    std::string words_text(std::span<const int> words) const;

    std::vector<std::string> world_ids() const;
    std::vector<std::string> inventory_texts() const;

    bool operator==(const ReferenceGame&) const = default;
};

// Truth table lookup by index; use for inventory utterances only.
bool global_truth(const ReferenceGame& game, int utterance, int world);

// Lookup by space-joined surface form. Throws QueryError on an utterance
// that is not in the inventory.
bool global_truth(const ReferenceGame& game, std::string_view joined,
                  std::string_view world_id);

// True iff every word of `words` holds of `world` under the game's lexicon.
// Only meaningful for lexical-mode games.
bool lexical_truth(const ReferenceGame& game, std::span<const int> words,
                   const World& world);

}  // namespace incrsa

#include "incrsa/game.hpp"

#include "incrsa/errors.hpp"

namespace incrsa {

int ReferenceGame::world_index(std::string_view id) const {
    for (std::size_t i = 0; i < worlds.size(); ++i) {
        if (worlds[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

int ReferenceGame::word_index(std::string_view surface) const {
    for (std::size_t i = 0; i < vocabulary.size(); ++i) {
        if (vocabulary[i].surface == surface) return static_cast<int>(i);
    }
    return -1;
}

int ReferenceGame::utterance_index(std::string_view joined) const {
    for (std::size_t i = 0; i < inventory.size(); ++i) {
        if (utterance_text(static_cast<int>(i)) == joined) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

int ReferenceGame::utterance_index(const Utterance& u) const {
    for (std::size_t i = 0; i < inventory.size(); ++i) {
        if (inventory[i] == u) return static_cast<int>(i);
    }
    return -1;
}

double ReferenceGame::utterance_cost(const Utterance& u, bool include_stop) const {
    double total = include_stop ? costs.stop : 0.0;
    for (int w : u.words) total += word_costs[w];
    return total;
}

std::string ReferenceGame::utterance_text(int utterance) const {
    return words_text(inventory[utterance].words);
}

std::string ReferenceGame::words_text(std::span<const int> words) const {
    std::string out;
    for (int w : words) {
        if (!out.empty()) out += ' ';
        out += vocabulary[w].surface;
    }
    return out;
}

std::vector<std::string> ReferenceGame::world_ids() const {
    std::vector<std::string> ids;
    ids.reserve(worlds.size());
    for (const auto& w : worlds) ids.push_back(w.id);
    return ids;
}

std::vector<std::string> ReferenceGame::inventory_texts() const {
    std::vector<std::string> texts;
    texts.reserve(inventory.size());
    for (std::size_t i = 0; i < inventory.size(); ++i) {
        texts.push_back(utterance_text(static_cast<int>(i)));
    }
    return texts;
}

bool global_truth(const ReferenceGame& game, int utterance, int world) {
    return game.truth_of(utterance, world);
}

bool global_truth(const ReferenceGame& game, std::string_view joined,
                  std::string_view world_id) {
    int u = game.utterance_index(joined);
    if (u < 0) {
        throw QueryError("unknown utterance: " + std::string(joined));
    }
    int w = game.world_index(world_id);
    if (w < 0) {
        throw QueryError("unknown world: " + std::string(world_id));
    }
    return game.truth_of(u, w);
}

bool lexical_truth(const ReferenceGame& game, std::span<const int> words,
                   const World& world) {
    for (int wi : words) {
        auto entry = game.lexicon.find(game.vocabulary[wi].surface);
        if (entry == game.lexicon.end()) return false;
        for (const auto& [attr, value] : entry->second) {
            auto it = world.attributes.find(attr);
            if (it == world.attributes.end() || it->second != value) return false;
        }
    }
    return true;
}

}  // namespace incrsa

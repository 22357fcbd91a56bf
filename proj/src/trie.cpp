#include "incrsa/trie.hpp"

#include <algorithm>

#include "incrsa/errors.hpp"

namespace incrsa {

UtteranceTrie UtteranceTrie::build(const ReferenceGame& game) {
    UtteranceTrie trie;
    const int n_worlds = static_cast<int>(game.worlds.size());
    trie.nodes_.push_back(Node{});
    trie.nodes_[0].world_count.assign(n_worlds, 0);

    auto child_of = [&](int node_id, int word) {
        auto it = trie.nodes_[node_id].children.find(word);
        if (it != trie.nodes_[node_id].children.end()) return it->second;
        int id = static_cast<int>(trie.nodes_.size());
        Node fresh;
        fresh.world_count.assign(n_worlds, 0);
        fresh.depth = trie.nodes_[node_id].depth + 1;
        trie.nodes_.push_back(std::move(fresh));
        trie.nodes_[node_id].children.emplace(word, id);
        trie.max_depth_ = std::max(trie.max_depth_, trie.nodes_[id].depth);
        return id;
    };

    for (std::size_t u = 0; u < game.inventory.size(); ++u) {
        bool true_somewhere = false;
        for (int w = 0; w < n_worlds; ++w) {
            true_somewhere |= game.truth_of(static_cast<int>(u), w);
        }
        // Accumulate this utterance into every node on its path, root through
        // stop child. Extensions false of every world count for neither the
        // per-world nor the any-world tally.
        int node_id = 0;
        auto tally = [&](int id) {
            if (!true_somewhere) return;
            Node& n = trie.nodes_[id];
            n.any_count += 1;
            for (int w = 0; w < n_worlds; ++w) {
                n.world_count[w] += game.truth_of(static_cast<int>(u), w) ? 1 : 0;
            }
        };
        tally(node_id);
        for (int word : game.inventory[u].words) {
            node_id = child_of(node_id, word);
            tally(node_id);
        }
        int stop_node = child_of(node_id, game.stop_index);
        trie.nodes_[stop_node].utterance = static_cast<int>(u);
        tally(stop_node);
    }
    return trie;
}

int UtteranceTrie::walk(std::span<const int> prefix) const {
    auto found = try_walk(prefix);
    if (!found) {
        throw QueryError("sequence cannot begin any inventory utterance");
    }
    return *found;
}

std::optional<int> UtteranceTrie::try_walk(std::span<const int> prefix) const {
    int node_id = 0;
    for (int word : prefix) {
        const Node& n = nodes_[node_id];
        auto it = n.children.find(word);
        if (it == n.children.end()) return std::nullopt;
        node_id = it->second;
    }
    return node_id;
}

std::vector<int> UtteranceTrie::continuation_words(int node_id) const {
    std::vector<int> words;
    words.reserve(nodes_[node_id].children.size());
    for (const auto& [word, child] : nodes_[node_id].children) {
        words.push_back(word);
    }
    return words;
}

double incremental_truth(const UtteranceTrie& trie, std::span<const int> prefix,
                         int world) {
    return trie.incremental_truth(trie.walk(prefix), world);
}

std::vector<int> continuations(const UtteranceTrie& trie,
                               std::span<const int> prefix) {
    return trie.continuation_words(trie.walk(prefix));
}

}  // namespace incrsa

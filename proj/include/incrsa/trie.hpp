#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "incrsa/game.hpp"

namespace incrsa {

// Prefix tree over the utterance inventory. Every inventory utterance is a
// stop-terminated path; a node carries, for each world, the number of
// complete-utterance extensions of its prefix true in that world, plus the
// number of extensions true of at least one world. Extensions false of every
// world are excluded from both counts. Immutable after build; all queries
// are pure reads.
class UtteranceTrie {
  public:
    struct Node {
        std::map<int, int> children;  // word index -> node id; stop child
                                      // present iff the prefix is a complete
                                      // inventory utterance
        std::vector<int> world_count;
        int any_count = 0;
        int utterance = -1;  // inventory index, set on stop children only
        int depth = 0;
    };

    static UtteranceTrie build(const ReferenceGame& game);

    int root() const { return 0; }
    const Node& node(int id) const { return nodes_[id]; }
    int size() const { return static_cast<int>(nodes_.size()); }
    int max_depth() const { return max_depth_; }

    // Node for a word-index prefix (which may end in the stop word). Throws
    // QueryError when the sequence cannot begin any inventory utterance.
    int walk(std::span<const int> prefix) const;
    std::optional<int> try_walk(std::span<const int> prefix) const;

    // Fraction of complete-utterance extensions of the node's prefix true in
    // `world`, among extensions true of at least one world; 0 when no
    // extension is true anywhere.
    double incremental_truth(int node_id, int world) const {
        const Node& n = nodes_[node_id];
        if (n.any_count == 0) return 0.0;
        return static_cast<double>(n.world_count[world]) / n.any_count;
    }

    // All words (stop included) extending the node's prefix toward some
    // inventory utterance, in vocabulary-index order. Empty exactly at stop
    // children.
    std::vector<int> continuation_words(int node_id) const;

  private:
    std::vector<Node> nodes_;
    int max_depth_ = 0;
};

// Prefix-based convenience wrappers mirroring the trie's node queries.
double incremental_truth(const UtteranceTrie& trie, std::span<const int> prefix,
                         int world);
std::vector<int> continuations(const UtteranceTrie& trie,
                               std::span<const int> prefix);

}  // namespace incrsa

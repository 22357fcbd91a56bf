#include "incrsa/agents.hpp"

#include <algorithm>
#include <cmath>

#include "incrsa/errors.hpp"

namespace incrsa {

namespace {

// Unnormalized literal-listener column entry for (utterance, world), i.e.
// the w-entry of the normalized L0 row: prior(w)*truth / sum.
double l0_utt_mass(const ReferenceGame& game, int utterance, int world) {
    double num = 0.0, denom = 0.0;
    for (std::size_t w = 0; w < game.worlds.size(); ++w) {
        double m = game.prior[w] * (game.truth_of(utterance, static_cast<int>(w)) ? 1.0 : 0.0);
        denom += m;
        if (static_cast<int>(w) == world) num = m;
    }
    return denom > 0.0 ? num / denom : 0.0;
}

// w-entry of the normalized word-level L0 at a trie node.
double l0_word_mass(const ReferenceGame& game, const UtteranceTrie& trie,
                    int node_id, int world) {
    double num = 0.0, denom = 0.0;
    for (std::size_t w = 0; w < game.worlds.size(); ++w) {
        double m = game.prior[w] * trie.incremental_truth(node_id, static_cast<int>(w));
        denom += m;
        if (static_cast<int>(w) == world) num = m;
    }
    return denom > 0.0 ? num / denom : 0.0;
}

int require_world(const ReferenceGame& game, int world) {
    if (world < 0 || world >= static_cast<int>(game.worlds.size())) {
        throw QueryError("world index out of range");
    }
    return world;
}

// S1-WORD row as raw values aligned with continuation word indices.
std::vector<double> s1_word_row(const ReferenceGame& game, const UtteranceTrie& trie,
                                int node_id, const std::vector<int>& conts, int world) {
    std::vector<double> weights(conts.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < conts.size(); ++i) {
        int child = trie.node(node_id).children.at(conts[i]);
        double l0 = l0_word_mass(game, trie, child, world);
        // exp(log l0 - cost); zero listener mass stays zero (log -inf).
        weights[i] = l0 > 0.0 ? l0 * std::exp(-game.word_costs[conts[i]]) : 0.0;
        total += weights[i];
    }
    if (total == 0.0) {
        // Dead end: no continuation leads to a true utterance for this
        // world, so probability is evenly distributed over the grammatically
        // available continuations.
        std::fill(weights.begin(), weights.end(), 1.0 / conts.size());
        return weights;
    }
    for (double& w : weights) w /= total;
    return weights;
}

}  // namespace

Distribution literal_listener_utt(const ReferenceGame& game, int utterance) {
    std::vector<double> weights(game.worlds.size());
    for (std::size_t w = 0; w < game.worlds.size(); ++w) {
        weights[w] = game.prior[w] *
                     (game.truth_of(utterance, static_cast<int>(w)) ? 1.0 : 0.0);
    }
    return Distribution::from_weights(game.world_ids(), weights);
}

Distribution pragmatic_speaker_gp(const ReferenceGame& game, int world) {
    require_world(game, world);
    std::vector<double> weights(game.inventory.size());
    double total = 0.0;
    for (std::size_t u = 0; u < game.inventory.size(); ++u) {
        double l0 = l0_utt_mass(game, static_cast<int>(u), world);
        double cost = game.utterance_cost(game.inventory[u], /*include_stop=*/true);
        weights[u] = l0 > 0.0 ? l0 * std::exp(-cost) : 0.0;
        total += weights[u];
    }
    if (total == 0.0) {
        // No utterance is true of this world: uniform over the inventory,
        // mirroring the word-level dead-end fallback.
        return Distribution::uniform(game.inventory_texts());
    }
    return Distribution::from_weights(game.inventory_texts(), weights);
}

Distribution pragmatic_listener_utt(const ReferenceGame& game, int utterance) {
    std::vector<double> weights(game.worlds.size());
    for (std::size_t w = 0; w < game.worlds.size(); ++w) {
        Distribution s1 = pragmatic_speaker_gp(game, static_cast<int>(w));
        weights[w] = game.prior[w] * s1.value_at(utterance);
    }
    return Distribution::from_weights(game.world_ids(), weights);
}

Distribution literal_listener_word(const ReferenceGame& game,
                                   const UtteranceTrie& trie,
                                   std::span<const int> context, int word) {
    int node_id = trie.walk(context);
    auto it = trie.node(node_id).children.find(word);
    if (it == trie.node(node_id).children.end()) {
        throw QueryError("invalid continuation: " + game.vocabulary[word].surface);
    }
    int child = it->second;
    std::vector<double> weights(game.worlds.size());
    for (std::size_t w = 0; w < game.worlds.size(); ++w) {
        weights[w] = game.prior[w] * trie.incremental_truth(child, static_cast<int>(w));
    }
    return Distribution::from_weights(game.world_ids(), weights);
}

Distribution pragmatic_speaker_word(const ReferenceGame& game,
                                    const UtteranceTrie& trie,
                                    std::span<const int> context, int world) {
    require_world(game, world);
    int node_id = trie.walk(context);
    std::vector<int> conts = trie.continuation_words(node_id);
    if (conts.empty()) {
        throw QueryError("context is a completed utterance; no continuations");
    }
    std::vector<double> row = s1_word_row(game, trie, node_id, conts, world);
    std::vector<std::string> labels;
    labels.reserve(conts.size());
    for (int word : conts) labels.push_back(game.vocabulary[word].surface);
    return Distribution::from_weights(std::move(labels), row);
}

Distribution pragmatic_listener_word(const ReferenceGame& game,
                                     const UtteranceTrie& trie,
                                     std::span<const double> prior,
                                     std::span<const int> context, int word) {
    int node_id = trie.walk(context);
    if (!trie.node(node_id).children.count(word)) {
        throw QueryError("invalid continuation: " + game.vocabulary[word].surface);
    }
    std::vector<double> weights(game.worlds.size(), 0.0);
    for (std::size_t w = 0; w < game.worlds.size(); ++w) {
        if (prior[w] <= 0.0) continue;
        Distribution s1 = pragmatic_speaker_word(game, trie, context, static_cast<int>(w));
        weights[w] = prior[w] * s1.mass(game.vocabulary[word].surface);
    }
    return Distribution::from_weights(game.world_ids(), weights);
}

Distribution listener_belief_after(const ReferenceGame& game,
                                   const UtteranceTrie& trie,
                                   std::span<const int> context) {
    trie.walk(context);  // reject unknown prefixes up front
    std::vector<double> belief = game.prior;
    for (std::size_t i = 0; i < context.size(); ++i) {
        Distribution step = pragmatic_listener_word(
            game, trie, belief, context.subspan(0, i), context[i]);
        belief = step.values();
        if (step.empty_support()) break;
    }
    return Distribution::from_weights(game.world_ids(), belief);
}

Distribution pragmatic_listener_word(const ReferenceGame& game,
                                     const UtteranceTrie& trie,
                                     std::span<const int> context, int word) {
    Distribution belief = listener_belief_after(game, trie, context);
    return pragmatic_listener_word(game, trie, belief.values(), context, word);
}

Distribution speaker_utt_ip(const ReferenceGame& game, const UtteranceTrie& trie,
                            int world) {
    require_world(game, world);
    std::vector<double> prob(game.inventory.size(), 0.0);
    // Depth-first product of S1-WORD steps; stop children close utterances.
    auto visit = [&](auto&& self, int node_id, double acc) -> void {
        std::vector<int> conts = trie.continuation_words(node_id);
        std::vector<double> row = s1_word_row(game, trie, node_id, conts, world);
        for (std::size_t i = 0; i < conts.size(); ++i) {
            int child = trie.node(node_id).children.at(conts[i]);
            double p = acc * row[i];
            if (conts[i] == game.stop_index) {
                prob[trie.node(child).utterance] += p;
            } else if (p > 0.0) {
                self(self, child, p);
            }
        }
    };
    visit(visit, trie.root(), 1.0);
    return Distribution::from_weights(game.inventory_texts(), prob);
}

Utterance greedy_unroll(const ReferenceGame& game, const UtteranceTrie& trie,
                        int world) {
    require_world(game, world);
    Utterance result;
    int node_id = trie.root();
    for (int step = 0; step <= trie.max_depth(); ++step) {
        std::vector<int> conts = trie.continuation_words(node_id);
        std::vector<double> row = s1_word_row(game, trie, node_id, conts, world);
        int best = conts[0];
        double best_p = row[0];
        for (std::size_t i = 1; i < conts.size(); ++i) {
            if (row[i] > best_p ||
                (row[i] == best_p &&
                 game.vocabulary[conts[i]].surface < game.vocabulary[best].surface)) {
                best = conts[i];
                best_p = row[i];
            }
        }
        if (best == game.stop_index) return result;
        result.words.push_back(best);
        node_id = trie.node(node_id).children.at(best);
    }
    throw QueryError("greedy unroll failed to terminate");  // unreachable
}

std::vector<std::size_t> optimal_utterances(const Distribution& dist,
                                            double tie_epsilon) {
    std::vector<std::size_t> best;
    if (dist.empty_support()) return best;
    double max_p = *std::max_element(dist.values().begin(), dist.values().end());
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist.value_at(i) >= max_p - tie_epsilon) best.push_back(i);
    }
    return best;
}

bool weak_informativity_check(const ReferenceGame& game, const UtteranceTrie& trie,
                              int world) {
    Utterance u = greedy_unroll(game, trie, world);
    int index = game.utterance_index(u);
    if (index < 0) return false;  // cannot happen: unrolls end at stop children
    Distribution l0 = literal_listener_utt(game, index);
    return l0.value_at(world) >= 1.0 / game.worlds.size() - 1e-12;
}

}  // namespace incrsa

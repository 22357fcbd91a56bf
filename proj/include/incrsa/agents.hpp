#pragma once

#include <span>
#include <vector>

#include "incrsa/distribution.hpp"
#include "incrsa/game.hpp"
#include "incrsa/trie.hpp"

namespace incrsa {

// The six RSA agents plus greedy unrolling, optimal-set extraction, and the
// weak-informativity check.
//
// Support order conventions: distributions over worlds follow the game's
// world order, over utterances the inventory order, over continuation words
// the vocabulary-index order of the trie node's children. All agents are
// pure functions of (game, trie); none keeps state.

inline constexpr double kDefaultTieEpsilon = 1e-9;

// L0 over utterances: mass proportional to prior(w) times global truth.
// An utterance true of no world yields an empty-support result; downstream
// speakers treat its log as -inf.
Distribution literal_listener_utt(const ReferenceGame& game, int utterance);

// Globally pragmatic speaker: mass proportional to
// exp(log L0(w|u) - cost(u)), cost including the stop cost once per
// utterance. Uniform over the inventory when every utterance has zero
// literal-listener mass for `world`.
Distribution pragmatic_speaker_gp(const ReferenceGame& game, int world);

// L1 over utterances: mass proportional to prior(w) times S1-GP(u|w).
Distribution pragmatic_listener_utt(const ReferenceGame& game, int utterance);

// Word-level L0: mass proportional to prior(w) times the incremental truth
// of context+word. Throws QueryError when context+word is not a valid trie
// path.
Distribution literal_listener_word(const ReferenceGame& game,
                                   const UtteranceTrie& trie,
                                   std::span<const int> context, int word);

// Word-level pragmatic speaker over the continuations of `context`: mass
// proportional to exp(log L0-WORD(w|c,word) - cost(word)). When every
// continuation has zero word-level listener mass for `world`, probability is
// evenly distributed over the continuations.
Distribution pragmatic_speaker_word(const ReferenceGame& game,
                                    const UtteranceTrie& trie,
                                    std::span<const int> context, int world);

// Word-level pragmatic listener, one Bayes step: mass proportional to
// prior(w) times S1-WORD(word|c,w). `prior` is the listener's belief before
// hearing `word` (after having processed `context`).
Distribution pragmatic_listener_word(const ReferenceGame& game,
                                     const UtteranceTrie& trie,
                                     std::span<const double> prior,
                                     std::span<const int> context, int word);

// Listener belief over worlds after processing `context` word by word from
// the game prior, updating through the word-level pragmatic listener at each
// step.
Distribution listener_belief_after(const ReferenceGame& game,
                                   const UtteranceTrie& trie,
                                   std::span<const int> context);

// Convenience form that chains from the game prior through `context` before
// applying the step for `word`.
Distribution pragmatic_listener_word(const ReferenceGame& game,
                                     const UtteranceTrie& trie,
                                     std::span<const int> context, int word);

// Utterance-level incremental speaker (chain rule over S1-WORD steps,
// including the terminal stop step). Sums to 1 over the inventory.
Distribution speaker_utt_ip(const ReferenceGame& game, const UtteranceTrie& trie,
                            int world);

// Iteratively takes the argmax-probability continuation under S1-WORD until
// stop is chosen; ties break by lexicographic surface order. The result is
// always a member of the inventory.
Utterance greedy_unroll(const ReferenceGame& game, const UtteranceTrie& trie,
                        int world);

// Indices into dist's support whose probability is within tie_epsilon of the
// maximum. Empty for an empty-support distribution.
std::vector<std::size_t> optimal_utterances(const Distribution& dist,
                                            double tie_epsilon = kDefaultTieEpsilon);

// Whether L0-UTT(world | greedy_unroll(world)) is at least 1/|W|. Intended
// for zero-cost games.
bool weak_informativity_check(const ReferenceGame& game, const UtteranceTrie& trie,
                              int world);

}  // namespace incrsa

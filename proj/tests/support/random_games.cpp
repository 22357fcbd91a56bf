#include "support/random_games.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "incrsa/game_io.hpp"

namespace incrsa::testing {

ReferenceGame random_game(std::mt19937& rng, const RandomGameOptions& options) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    const int n_worlds = pick(options.min_worlds, options.max_worlds);
    const int n_vocab = pick(2, options.max_vocab);

    // Distinct word sequences, capped by the size of the sequence space.
    long space = 0;
    long layer = 1;
    for (int len = 1; len <= options.max_length; ++len) {
        layer *= n_vocab;
        space += layer;
    }
    const int n_utts = static_cast<int>(std::min<long>(
        pick(options.min_utterances, options.max_utterances), space));

    std::vector<std::string> vocab;
    for (int i = 0; i < n_vocab; ++i) {
        vocab.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    std::set<std::vector<std::string>> sequences;
    while (static_cast<int>(sequences.size()) < n_utts) {
        int len = pick(1, options.max_length);
        std::vector<std::string> seq;
        for (int i = 0; i < len; ++i) seq.push_back(vocab[pick(0, n_vocab - 1)]);
        sequences.insert(std::move(seq));
    }

    std::vector<std::vector<int>> truth(sequences.size(),
                                        std::vector<int>(n_worlds, 0));
    for (auto& row : truth) {
        for (int& cell : row) cell = pick(0, 1);
    }
    if (options.satisfiable) {
        for (auto& row : truth) {
            bool any = false;
            for (int cell : row) any |= cell != 0;
            if (!any) row[pick(0, n_worlds - 1)] = 1;
        }
        for (int w = 0; w < n_worlds; ++w) {
            bool any = false;
            for (const auto& row : truth) any |= row[w] != 0;
            if (!any) truth[pick(0, static_cast<int>(truth.size()) - 1)][w] = 1;
        }
    }

    GameBuilder builder;
    builder.vocabulary(vocab);
    std::vector<std::string> world_ids;
    for (int w = 0; w < n_worlds; ++w) {
        world_ids.push_back(std::string(1, static_cast<char>('A' + w)));
        builder.world(world_ids.back());
    }
    int u = 0;
    for (const auto& seq : sequences) {
        builder.utterance(seq);
        std::string joined;
        for (const auto& word : seq) {
            if (!joined.empty()) joined += ' ';
            joined += word;
        }
        for (int w = 0; w < n_worlds; ++w) {
            if (truth[u][w]) builder.true_pair(joined, world_ids[w]);
        }
        ++u;
    }

    if (!options.zero_costs) {
        std::uniform_real_distribution<double> cost(0.0, 2.0);
        builder.word_cost_default(cost(rng));
        for (const auto& word : vocab) {
            if (pick(0, 1)) builder.word_cost_override(word, cost(rng));
        }
        builder.stop_cost(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    }
    if (options.allow_nonuniform_prior && pick(0, 1)) {
        std::vector<double> mass(n_worlds);
        double total = 0.0;
        for (double& m : mass) {
            m = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
            total += m;
        }
        // Make the masses sum to exactly 1 within the loader's tolerance.
        std::map<std::string, double> prior;
        double acc = 0.0;
        for (int w = 0; w < n_worlds; ++w) {
            double p = (w + 1 == n_worlds) ? 1.0 - acc : mass[w] / total;
            acc += p;
            prior[world_ids[w]] = p;
        }
        builder.prior(prior);
    }
    return builder.build();
}

}  // namespace incrsa::testing

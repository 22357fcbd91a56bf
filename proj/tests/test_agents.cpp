#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "incrsa/agents.hpp"
#include "incrsa/errors.hpp"
#include "incrsa/game_io.hpp"
#include "incrsa/trie.hpp"

using namespace incrsa;
using doctest::Approx;

namespace {

ReferenceGame fig2_game() {
    return GameBuilder()
        .world("R1")
        .world("R2")
        .world("R3")
        .utterance({"dress"})
        .utterance({"red", "dress"})
        .utterance({"red", "object"})
        .true_pair("dress", "R1")
        .true_pair("dress", "R2")
        .true_pair("red dress", "R1")
        .true_pair("red object", "R1")
        .true_pair("red object", "R3")
        .build();
}

ReferenceGame english_game() {
    return GameBuilder()
        .world("R1")
        .world("R2")
        .utterance({"dress"})
        .utterance({"red", "dress"})
        .utterance({"hat"})
        .utterance({"blue", "hat"})
        .true_pair("dress", "R1")
        .true_pair("red dress", "R1")
        .true_pair("hat", "R2")
        .true_pair("blue hat", "R2")
        .word_cost_default(1.0)
        .build();
}

ReferenceGame spanish_game() {
    return GameBuilder()
        .world("R1")
        .world("R2")
        .utterance({"vestido"})
        .utterance({"vestido", "rojo"})
        .utterance({"sombrero"})
        .utterance({"sombrero", "azul"})
        .true_pair("vestido", "R1")
        .true_pair("vestido rojo", "R1")
        .true_pair("sombrero", "R2")
        .true_pair("sombrero azul", "R2")
        .word_cost_default(1.0)
        .build();
}

std::vector<int> words(const ReferenceGame& game,
                       std::initializer_list<const char*> surfaces) {
    std::vector<int> out;
    for (const char* s : surfaces) out.push_back(game.word_index(s));
    return out;
}

}  // namespace

TEST_CASE("literal listener over utterances (fig2 L0 table)") {
    ReferenceGame game = fig2_game();
    Distribution dress = literal_listener_utt(game, game.utterance_index("dress"));
    CHECK(dress.mass("R1") == Approx(0.5));
    CHECK(dress.mass("R2") == Approx(0.5));
    CHECK(dress.mass("R3") == Approx(0.0));

    Distribution red_object =
        literal_listener_utt(game, game.utterance_index("red object"));
    CHECK(red_object.mass("R1") == Approx(0.5));
    CHECK(red_object.mass("R3") == Approx(0.5));
}

TEST_CASE("literal listener: single-world game and empty-support flag") {
    ReferenceGame game = GameBuilder()
                             .world("W")
                             .utterance({"a"})
                             .utterance({"b"})
                             .true_pair("a", "W")
                             .build();
    Distribution a = literal_listener_utt(game, 0);
    CHECK(a.mass("W") == Approx(1.0));
    CHECK_FALSE(a.empty_support());

    // "b" is true of no world: distinct empty-support result, no exception.
    Distribution b = literal_listener_utt(game, 1);
    CHECK(b.empty_support());
    CHECK(b.mass("W") == 0.0);
}

TEST_CASE("global pragmatic speaker (fig2 S1-UTT-GP rows)") {
    ReferenceGame game = fig2_game();
    Distribution r1 = pragmatic_speaker_gp(game, game.world_index("R1"));
    CHECK(r1.mass("dress") == Approx(0.25));
    CHECK(r1.mass("red dress") == Approx(0.5));
    CHECK(r1.mass("red object") == Approx(0.25));

    // World true of exactly one utterance takes it all.
    Distribution r3 = pragmatic_speaker_gp(game, game.world_index("R3"));
    CHECK(r3.mass("red object") == Approx(1.0));
}

TEST_CASE("global speaker honors additive costs (english 0.73/0.27)") {
    ReferenceGame game = english_game();
    Distribution r1 = pragmatic_speaker_gp(game, game.world_index("R1"));
    // exp(-1)/(exp(-1)+exp(-2)) = 1/(1+e^-1)
    double expect = 1.0 / (1.0 + std::exp(-1.0));
    CHECK(r1.mass("dress") == Approx(expect).epsilon(1e-12));
    CHECK(r1.mass("red dress") == Approx(1.0 - expect).epsilon(1e-12));
    CHECK(r1.mass("dress") == Approx(0.73).epsilon(0.01));
}

TEST_CASE("global speaker falls back to uniform when no utterance is true") {
    ReferenceGame game = GameBuilder()
                             .world("A")
                             .world("B")
                             .utterance({"x"})
                             .utterance({"y"})
                             .true_pair("x", "A")
                             .true_pair("y", "A")
                             .build();
    Distribution b = pragmatic_speaker_gp(game, game.world_index("B"));
    CHECK(b.mass("x") == Approx(0.5));
    CHECK(b.mass("y") == Approx(0.5));
}

TEST_CASE("pragmatic listener over utterances (fig2 L1 table)") {
    ReferenceGame game = fig2_game();
    Distribution dress = pragmatic_listener_utt(game, game.utterance_index("dress"));
    CHECK(dress.mass("R1") == Approx(0.2));
    CHECK(dress.mass("R2") == Approx(0.8));
    CHECK(dress.mass("R3") == Approx(0.0));

    Distribution red_dress =
        pragmatic_listener_utt(game, game.utterance_index("red dress"));
    CHECK(red_dress.mass("R1") == Approx(1.0));

    Distribution red_object =
        pragmatic_listener_utt(game, game.utterance_index("red object"));
    CHECK(red_object.mass("R1") == Approx(0.2));
    CHECK(red_object.mass("R3") == Approx(0.8));
}

TEST_CASE("listeners flag all-zero columns as empty support") {
    // "z" is true of no world: the utterance-level pragmatic listener sees an
    // all-zero column, and so does the word-level listener hearing z.
    ReferenceGame game = GameBuilder()
                             .world("A")
                             .world("B")
                             .utterance({"x"})
                             .utterance({"z"})
                             .true_pair("x", "A")
                             .true_pair("x", "B")
                             .build();
    Distribution l1 = pragmatic_listener_utt(game, game.utterance_index("z"));
    CHECK(l1.empty_support());

    UtteranceTrie trie = UtteranceTrie::build(game);
    Distribution l1w = pragmatic_listener_word(game, trie, {}, game.word_index("z"));
    CHECK(l1w.empty_support());
}

TEST_CASE("word-level literal listener (fig2)") {
    ReferenceGame game = fig2_game();
    UtteranceTrie trie = UtteranceTrie::build(game);

    // Incremental truths of "red" are (1, 0, 1/2); normalized (2/3, 0, 1/3).
    Distribution red =
        literal_listener_word(game, trie, {}, game.word_index("red"));
    CHECK(red.mass("R1") == Approx(2.0 / 3));
    CHECK(red.mass("R2") == Approx(0.0));
    CHECK(red.mass("R3") == Approx(1.0 / 3));

    Distribution dress =
        literal_listener_word(game, trie, {}, game.word_index("dress"));
    CHECK(dress.mass("R1") == Approx(0.5));
    CHECK(dress.mass("R2") == Approx(0.5));

    Distribution rd = literal_listener_word(game, trie, words(game, {"red"}),
                                            game.word_index("dress"));
    CHECK(rd.mass("R1") == Approx(1.0));

    CHECK_THROWS_AS(
        literal_listener_word(game, trie, {}, game.word_index("object")),
        QueryError);
}

TEST_CASE("word-level pragmatic speaker (fig2 branches)") {
    ReferenceGame game = fig2_game();
    UtteranceTrie trie = UtteranceTrie::build(game);
    int r1 = game.world_index("R1");
    int r2 = game.world_index("R2");
    int r3 = game.world_index("R3");

    Distribution root_r1 = pragmatic_speaker_word(game, trie, {}, r1);
    CHECK(root_r1.mass("dress") == Approx(3.0 / 7));
    CHECK(root_r1.mass("red") == Approx(4.0 / 7));

    Distribution red_r1 = pragmatic_speaker_word(game, trie, words(game, {"red"}), r1);
    CHECK(red_r1.mass("dress") == Approx(2.0 / 3));
    CHECK(red_r1.mass("object") == Approx(1.0 / 3));

    // Dead end: no continuation of "red" is true of R2, so probability is
    // evenly distributed over the available continuations.
    Distribution red_r2 = pragmatic_speaker_word(game, trie, words(game, {"red"}), r2);
    CHECK(red_r2.mass("dress") == Approx(0.5));
    CHECK(red_r2.mass("object") == Approx(0.5));

    Distribution root_r3 = pragmatic_speaker_word(game, trie, {}, r3);
    CHECK(root_r3.mass("red") == Approx(1.0));
    CHECK(root_r3.mass("dress") == Approx(0.0));

    Distribution red_r3 = pragmatic_speaker_word(game, trie, words(game, {"red"}), r3);
    CHECK(red_r3.mass("object") == Approx(1.0));
}

TEST_CASE("word-level speaker prefers the free stop (spanish)") {
    ReferenceGame game = spanish_game();
    UtteranceTrie trie = UtteranceTrie::build(game);
    Distribution row = pragmatic_speaker_word(game, trie, words(game, {"vestido"}),
                                              game.world_index("R1"));
    double expect = 1.0 / (1.0 + std::exp(-1.0));
    CHECK(row.mass(kStopSurface) == Approx(expect).epsilon(1e-12));
    CHECK(row.mass("rojo") == Approx(1.0 - expect).epsilon(1e-12));
}

TEST_CASE("word-level pragmatic listener (fig2 'red')") {
    ReferenceGame game = fig2_game();
    UtteranceTrie trie = UtteranceTrie::build(game);
    Distribution red = pragmatic_listener_word(game, trie, {}, game.word_index("red"));
    // S1-WORD(red | [], w) = (4/7, 0, 1); normalized by uniform prior.
    CHECK(red.mass("R1") == Approx(4.0 / 11));
    CHECK(red.mass("R2") == Approx(0.0));
    CHECK(red.mass("R3") == Approx(7.0 / 11));
}

TEST_CASE("word-level pragmatic listener chains beliefs through the context") {
    ReferenceGame game = fig2_game();
    UtteranceTrie trie = UtteranceTrie::build(game);

    // After hearing "red", R2 is ruled out; hearing "dress" then leaves R1
    // alone even though the speaker's fallback gives R2 positive mass.
    Distribution rd = pragmatic_listener_word(game, trie, words(game, {"red"}),
                                              game.word_index("dress"));
    CHECK(rd.mass("R1") == Approx(1.0));
    CHECK(rd.mass("R2") == Approx(0.0));
    CHECK(rd.mass("R3") == Approx(0.0));

    // The single-step form with an explicit prior keeps the fallback mass.
    Distribution step = pragmatic_listener_word(game, trie, game.prior,
                                                words(game, {"red"}),
                                                game.word_index("dress"));
    CHECK(step.mass("R1") == Approx(4.0 / 7));
    CHECK(step.mass("R2") == Approx(3.0 / 7));
}

TEST_CASE("belief after a context folds the game prior through L1-WORD steps") {
    ReferenceGame game = fig2_game();
    UtteranceTrie trie = UtteranceTrie::build(game);
    Distribution after_red = listener_belief_after(game, trie, words(game, {"red"}));
    CHECK(after_red.mass("R1") == Approx(4.0 / 11));
    CHECK(after_red.mass("R3") == Approx(7.0 / 11));

    Distribution empty = listener_belief_after(game, trie, {});
    CHECK(empty.mass("R1") == Approx(1.0 / 3));
}

TEST_CASE("utterance-level incremental speaker (fig2 exact values)") {
    ReferenceGame game = fig2_game();
    UtteranceTrie trie = UtteranceTrie::build(game);

    Distribution r1 = speaker_utt_ip(game, trie, game.world_index("R1"));
    CHECK(r1.mass("dress") == Approx(3.0 / 7).epsilon(1e-12));
    CHECK(r1.mass("red dress") == Approx(8.0 / 21).epsilon(1e-12));
    CHECK(r1.mass("red object") == Approx(4.0 / 21).epsilon(1e-12));

    Distribution r2 = speaker_utt_ip(game, trie, game.world_index("R2"));
    CHECK(r2.mass("dress") == Approx(1.0));

    Distribution r3 = speaker_utt_ip(game, trie, game.world_index("R3"));
    CHECK(r3.mass("red object") == Approx(1.0));
}

TEST_CASE("incremental speaker: english undecided, spanish decided") {
    ReferenceGame english = english_game();
    UtteranceTrie etrie = UtteranceTrie::build(english);
    Distribution eng = speaker_utt_ip(english, etrie, english.world_index("R1"));
    CHECK(eng.mass("dress") == Approx(0.5).epsilon(1e-12));
    CHECK(eng.mass("red dress") == Approx(0.5).epsilon(1e-12));

    ReferenceGame spanish = spanish_game();
    UtteranceTrie strie = UtteranceTrie::build(spanish);
    Distribution spa = speaker_utt_ip(spanish, strie, spanish.world_index("R1"));
    double expect = 1.0 / (1.0 + std::exp(-1.0));
    CHECK(spa.mass("vestido") == Approx(expect).epsilon(1e-12));
    CHECK(spa.mass("vestido rojo") == Approx(1.0 - expect).epsilon(1e-12));
}

TEST_CASE("greedy unrolling (fig2)") {
    ReferenceGame game = fig2_game();
    UtteranceTrie trie = UtteranceTrie::build(game);
    CHECK(game.words_text(greedy_unroll(game, trie, game.world_index("R1")).words) ==
          "red dress");
    CHECK(game.words_text(greedy_unroll(game, trie, game.world_index("R2")).words) ==
          "dress");
    CHECK(game.words_text(greedy_unroll(game, trie, game.world_index("R3")).words) ==
          "red object");
}

TEST_CASE("greedy unrolling: single-utterance game and deterministic ties") {
    ReferenceGame single = GameBuilder()
                               .world("W")
                               .utterance({"only", "one"})
                               .true_pair("only one", "W")
                               .build();
    UtteranceTrie trie = UtteranceTrie::build(single);
    CHECK(single.words_text(greedy_unroll(single, trie, 0).words) == "only one");

    // Two equally informative first words tie; the lexicographically smaller
    // surface wins.
    ReferenceGame tie = GameBuilder()
                            .world("A")
                            .world("B")
                            .utterance({"zeta"})
                            .utterance({"alpha"})
                            .true_pair("zeta", "A")
                            .true_pair("alpha", "A")
                            .build();
    UtteranceTrie tie_trie = UtteranceTrie::build(tie);
    CHECK(tie.words_text(greedy_unroll(tie, tie_trie, tie.world_index("A")).words) ==
          "alpha");
}

TEST_CASE("optimal utterance sets") {
    Distribution even = Distribution::from_weights({"dress", "red dress"}, {0.5, 0.5});
    auto both = optimal_utterances(even);
    CHECK(both.size() == 2);

    Distribution skewed =
        Distribution::from_weights({"vestido", "vestido rojo"}, {0.73, 0.27});
    auto one = optimal_utterances(skewed);
    REQUIRE(one.size() == 1);
    CHECK(skewed.label_at(one[0]) == "vestido");

    Distribution uniform = Distribution::uniform({"a", "b", "c", "d"});
    CHECK(optimal_utterances(uniform).size() == 4);
}

TEST_CASE("weak informativity on fig2 and the single-world game") {
    ReferenceGame game = fig2_game();
    UtteranceTrie trie = UtteranceTrie::build(game);
    for (std::size_t w = 0; w < game.worlds.size(); ++w) {
        CHECK(weak_informativity_check(game, trie, static_cast<int>(w)));
    }

    ReferenceGame single = GameBuilder()
                               .world("W")
                               .utterance({"a"})
                               .true_pair("a", "W")
                               .build();
    UtteranceTrie single_trie = UtteranceTrie::build(single);
    CHECK(weak_informativity_check(single, single_trie, 0));
}

TEST_CASE("sedivy anticipatory implicature and its cancelation") {
    ReferenceGame game = GameBuilder()
                             .world("tall_cup", {{"type", "cup"}, {"height", "tall"}})
                             .world("tall_pitcher",
                                    {{"type", "pitcher"}, {"height", "tall"}})
                             .world("short_cup", {{"type", "cup"}, {"height", "short"}})
                             .world("key", {{"type", "key"}})
                             .utterance({"tall", "cup"})
                             .utterance({"short", "cup"})
                             .utterance({"tall", "pitcher"})
                             .utterance({"cup"})
                             .utterance({"pitcher"})
                             .utterance({"key"})
                             .lexeme("tall", {{"height", "tall"}})
                             .lexeme("short", {{"height", "short"}})
                             .lexeme("cup", {{"type", "cup"}})
                             .lexeme("pitcher", {{"type", "pitcher"}})
                             .lexeme("key", {{"type", "key"}})
                             .word_cost_default(1.0)
                             .build();
    UtteranceTrie trie = UtteranceTrie::build(game);

    Distribution tall = pragmatic_listener_word(game, trie, {}, game.word_index("tall"));
    CHECK(tall.mass("tall_cup") == Approx(0.6).epsilon(1e-12));
    CHECK(tall.mass("tall_pitcher") == Approx(0.4).epsilon(1e-12));
    CHECK(tall.mass("short_cup") == Approx(0.0));
    CHECK(tall.mass("key") == Approx(0.0));

    Distribution pitcher = pragmatic_listener_word(
        game, trie, words(game, {"tall"}), game.word_index("pitcher"));
    CHECK(pitcher.mass("tall_pitcher") == Approx(1.0));
    CHECK(pitcher.mass("tall_cup") == Approx(0.0));
}

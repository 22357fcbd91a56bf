#include "incrsa/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "incrsa/agents.hpp"
#include "incrsa/errors.hpp"
#include "incrsa/game_io.hpp"
#include "incrsa/scenarios.hpp"
#include "incrsa/trie.hpp"
#include "incrsa/tuna.hpp"

namespace incrsa::cli {

namespace {

constexpr int kOk = 0;
constexpr int kGoldenFailure = 1;
constexpr int kInputError = 2;
constexpr int kQueryErrorCode = 3;

std::string prob4(double p) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", p);
    return buffer;
}

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> words;
    std::string word;
    while (in >> word) words.push_back(word);
    return words;
}

std::vector<int> parse_context(const ReferenceGame& game, const std::string& text) {
    std::vector<int> context;
    for (const std::string& surface : split_words(text)) {
        int idx = game.word_index(surface);
        if (idx < 0 || idx == game.stop_index) {
            throw QueryError("unknown context word: " + surface);
        }
        context.push_back(idx);
    }
    return context;
}

int require_world(const ReferenceGame& game, const std::string& id) {
    int w = game.world_index(id);
    if (w < 0) throw QueryError("unknown world: " + id);
    return w;
}

// Probability table sorted descending (label ascending on ties), optionally
// marking members of the optimal set with '*'.
void print_ranked(std::ostream& out, const Distribution& dist,
                  const std::set<std::size_t>* optimal) {
    std::vector<std::size_t> order(dist.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dist.value_at(a) != dist.value_at(b)) {
            return dist.value_at(a) > dist.value_at(b);
        }
        return dist.label_at(a) < dist.label_at(b);
    });
    std::size_t width = 0;
    for (const std::string& label : dist.labels()) {
        width = std::max(width, label.size());
    }
    for (std::size_t i : order) {
        std::string line = optimal && optimal->count(i) ? "* " : "  ";
        line += dist.label_at(i);
        line.append(width - dist.label_at(i).size() + 2, ' ');
        line += prob4(dist.value_at(i));
        out << line << "\n";
    }
    if (dist.empty_support()) out << "(empty support)\n";
}

// Per-world table in world order.
void print_worlds(std::ostream& out, const Distribution& dist) {
    std::size_t width = 0;
    for (const std::string& label : dist.labels()) {
        width = std::max(width, label.size());
    }
    for (std::size_t i = 0; i < dist.size(); ++i) {
        std::string line = dist.label_at(i);
        line.append(width - dist.label_at(i).size() + 2, ' ');
        line += prob4(dist.value_at(i));
        out << line << "\n";
    }
    if (dist.empty_support()) out << "(empty support)\n";
}

void print_row_result(std::ostream& out, const std::string& scenario,
                      const RowResult& row) {
    out << (row.passed ? "[PASS] " : "[FAIL] ") << scenario << " " << row.description
        << "  dev=" << prob4(row.max_abs_deviation) << " tol=" << prob4(row.tolerance)
        << "\n";
    out << "       computed:";
    for (std::size_t i = 0; i < row.computed.size(); ++i) {
        out << " " << row.computed.label_at(i) << "=" << prob4(row.computed.value_at(i));
    }
    out << "\n       expected:";
    for (const auto& [label, p] : row.expected) {
        out << " " << label << "=" << prob4(p);
    }
    out << "\n";
}

struct Options {
    std::string game_path;
    std::string world_id;
    std::string mode = "gp";
    std::string context;
    std::string word;
    std::string utterance;
    std::string scenario;
    bool all_scenarios = false;
    std::string corpus;
    std::string fixture;
    std::string domain;
    std::string json_path;
    double tie_epsilon = kDefaultTieEpsilon;
    bool literal = false;
};

int cmd_speak(const Options& opt, std::ostream& out) {
    ReferenceGame game = load_game_file(opt.game_path);
    int world = require_world(game, opt.world_id);
    Distribution dist;
    if (opt.mode == "gp") {
        dist = pragmatic_speaker_gp(game, world);
    } else {
        UtteranceTrie trie = UtteranceTrie::build(game);
        dist = speaker_utt_ip(game, trie, world);
    }
    auto best = optimal_utterances(dist, opt.tie_epsilon);
    std::set<std::size_t> optimal(best.begin(), best.end());
    print_ranked(out, dist, &optimal);
    return kOk;
}

int cmd_listen(const Options& opt, std::ostream& out) {
    ReferenceGame game = load_game_file(opt.game_path);
    int u = game.utterance_index(opt.utterance);
    if (u < 0) throw QueryError("unknown utterance: " + opt.utterance);
    Distribution dist = opt.literal ? literal_listener_utt(game, u)
                                    : pragmatic_listener_utt(game, u);
    print_worlds(out, dist);
    return kOk;
}

int cmd_speak_word(const Options& opt, std::ostream& out) {
    ReferenceGame game = load_game_file(opt.game_path);
    UtteranceTrie trie = UtteranceTrie::build(game);
    int world = require_world(game, opt.world_id);
    std::vector<int> context = parse_context(game, opt.context);
    Distribution dist = pragmatic_speaker_word(game, trie, context, world);
    print_ranked(out, dist, nullptr);
    return kOk;
}

int cmd_listen_word(const Options& opt, std::ostream& out) {
    ReferenceGame game = load_game_file(opt.game_path);
    UtteranceTrie trie = UtteranceTrie::build(game);
    std::vector<int> context = parse_context(game, opt.context);
    int word = game.word_index(opt.word);
    if (word < 0) throw QueryError("unknown word: " + opt.word);
    int node = trie.walk(context);
    if (!trie.node(node).children.count(word)) {
        std::string valid;
        for (int cont : trie.continuation_words(node)) {
            if (!valid.empty()) valid += ", ";
            valid += game.vocabulary[cont].surface;
        }
        throw QueryError("no utterance continues \"" + opt.context + "\" with " +
                         opt.word + "; valid continuations: " + valid);
    }
    Distribution dist = opt.literal
                            ? literal_listener_word(game, trie, context, word)
                            : pragmatic_listener_word(game, trie, context, word);
    print_worlds(out, dist);
    return kOk;
}

int cmd_unroll(const Options& opt, std::ostream& out) {
    ReferenceGame game = load_game_file(opt.game_path);
    UtteranceTrie trie = UtteranceTrie::build(game);
    int world = require_world(game, opt.world_id);
    Utterance u = greedy_unroll(game, trie, world);
    out << game.words_text(u.words) << "\n";
    return kOk;
}

int cmd_scenario(const Options& opt, std::ostream& out) {
    std::vector<ScenarioFixture> fixtures = builtin_scenarios();
    std::vector<const ScenarioFixture*> selected;
    if (opt.all_scenarios) {
        for (const ScenarioFixture& fx : fixtures) selected.push_back(&fx);
    } else {
        const ScenarioFixture* fx = find_scenario(fixtures, opt.scenario);
        if (!fx) {
            throw ValidationError("unknown scenario: " + opt.scenario);
        }
        selected.push_back(fx);
    }
    bool all_passed = true;
    for (const ScenarioFixture* fx : selected) {
        ScenarioReport report = run_scenario(*fx);
        int passed = 0;
        for (const RowResult& row : report.rows) {
            print_row_result(out, report.name, row);
            passed += row.passed ? 1 : 0;
        }
        out << report.name << ": " << passed << "/" << report.rows.size()
            << " rows passed\n";
        all_passed = all_passed && report.all_passed();
    }
    return all_passed ? kOk : kGoldenFailure;
}

int cmd_export_scenario(const Options& opt, std::ostream& out) {
    std::vector<ScenarioFixture> fixtures = builtin_scenarios();
    const ScenarioFixture* fx = find_scenario(fixtures, opt.scenario);
    if (!fx) {
        throw ValidationError("unknown scenario: " + opt.scenario);
    }
    std::string text = save_game(fx->game).dump(2);
    if (opt.json_path.empty()) {
        out << text << "\n";
    } else {
        std::ofstream file(opt.json_path);
        if (!file) throw ValidationError("cannot write file: " + opt.json_path);
        file << text << "\n";
    }
    return kOk;
}

int cmd_tuna(const Options& opt, std::ostream& out, std::ostream& err) {
    if (opt.corpus.empty() == opt.fixture.empty()) {
        throw ValidationError("tuna: exactly one of --corpus or --fixture is required");
    }
    tuna::CorpusLoad load;
    std::string domain = opt.domain;
    if (!opt.corpus.empty()) {
        if (domain.empty()) {
            throw ValidationError("tuna: --domain is required with --corpus");
        }
        load = tuna::parse_corpus(opt.corpus, domain);
    } else {
        load = tuna::load_fixture(opt.fixture);
        const std::string& file_domain = load.trials.front().domain;
        if (domain.empty()) {
            domain = file_domain;
        } else if (!file_domain.empty() && file_domain != domain) {
            throw ValidationError("tuna: fixture domain is " + file_domain +
                                  ", not " + domain);
        }
    }
    for (const std::string& problem : load.file_errors) {
        err << "warning: " << problem << "\n";
    }
    if (load.dropped_multi_target > 0) {
        err << "dropped " << load.dropped_multi_target << " multi-target trial(s)\n";
    }
    auto inventory = tuna::build_inventory(load.trials);
    tuna::ExperimentReport report =
        tuna::run_experiment(load.trials, inventory, domain, opt.tie_epsilon);
    tuna::print_report_table(report, out);
    if (!opt.json_path.empty()) {
        std::ofstream file(opt.json_path);
        if (!file) throw ValidationError("cannot write file: " + opt.json_path);
        file << tuna::report_to_json(report).dump(2) << "\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact iterated-response pragmatics over finite reference games"};
    app.require_subcommand(1);
    Options opt;

    auto add_game = [&](CLI::App* cmd) {
        cmd->add_option("--game", opt.game_path, "game-spec JSON file")->required();
    };
    auto add_tie = [&](CLI::App* cmd) {
        cmd->add_option("--tie-epsilon", opt.tie_epsilon,
                        "optimal-set tie tolerance");
    };

    CLI::App* speak = app.add_subcommand(
        "speak", "utterance distribution for a target world");
    add_game(speak);
    speak->add_option("--world", opt.world_id, "target world id")->required();
    speak->add_option("--mode", opt.mode, "gp (global) or ip (incremental)")
        ->check(CLI::IsMember({"gp", "ip"}));
    add_tie(speak);

    CLI::App* listen = app.add_subcommand(
        "listen", "world distribution for a complete utterance");
    add_game(listen);
    listen->add_option("--utterance", opt.utterance, "space-joined utterance")
        ->required();
    listen->add_flag("--literal", opt.literal, "literal listener instead of pragmatic");

    CLI::App* speak_word = app.add_subcommand(
        "speak-word", "next-word distribution given a context");
    add_game(speak_word);
    speak_word->add_option("--world", opt.world_id, "target world id")->required();
    speak_word->add_option("--context", opt.context, "words so far, space-joined");

    CLI::App* listen_word = app.add_subcommand(
        "listen-word", "world distribution after hearing context plus one word");
    add_game(listen_word);
    listen_word->add_option("--context", opt.context, "words so far, space-joined");
    listen_word->add_option("--word", opt.word, "next word heard")->required();
    listen_word->add_flag("--literal", opt.literal,
                          "literal listener instead of pragmatic");

    CLI::App* unroll = app.add_subcommand(
        "unroll", "greedily unroll the incremental speaker");
    add_game(unroll);
    unroll->add_option("--world", opt.world_id, "target world id")->required();

    CLI::App* scenario = app.add_subcommand(
        "scenario", "run built-in golden scenario suites");
    scenario->add_option("--scenario", opt.scenario, "scenario name");
    scenario->add_flag("--all", opt.all_scenarios, "run every built-in scenario");

    CLI::App* export_scenario = app.add_subcommand(
        "export-scenario", "write a built-in scenario as a game-spec document");
    export_scenario->add_option("--scenario", opt.scenario, "scenario name")
        ->required();
    export_scenario->add_option("--json", opt.json_path,
                                "output path (stdout when omitted)");

    CLI::App* tuna_cmd = app.add_subcommand(
        "tuna", "referring-expression experiment over a corpus or fixture");
    tuna_cmd->add_option("--corpus", opt.corpus, "TUNA XML corpus directory");
    tuna_cmd->add_option("--fixture", opt.fixture, "JSON trial fixture file");
    tuna_cmd->add_option("--domain", opt.domain, "furniture or people")
        ->check(CLI::IsMember({"furniture", "people"}));
    tuna_cmd->add_option("--json", opt.json_path, "write the full report as JSON");
    add_tie(tuna_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (app.got_subcommand(speak)) return cmd_speak(opt, out);
        if (app.got_subcommand(listen)) return cmd_listen(opt, out);
        if (app.got_subcommand(speak_word)) return cmd_speak_word(opt, out);
        if (app.got_subcommand(listen_word)) return cmd_listen_word(opt, out);
        if (app.got_subcommand(unroll)) return cmd_unroll(opt, out);
        if (app.got_subcommand(scenario)) {
            if (!opt.all_scenarios && opt.scenario.empty()) {
                throw ValidationError("scenario: provide --scenario NAME or --all");
            }
            return cmd_scenario(opt, out);
        }
        if (app.got_subcommand(export_scenario)) return cmd_export_scenario(opt, out);
        if (app.got_subcommand(tuna_cmd)) return cmd_tuna(opt, out, err);
    } catch (const QueryError& e) {
        err << "error: " << e.what() << "\n";
        return kQueryErrorCode;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    err << "error: no subcommand\n";
    return kInputError;
}

}  // namespace incrsa::cli

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "incrsa/distribution.hpp"
#include "incrsa/game.hpp"

namespace incrsa {

enum class AgentId {
    kL0Utt,
    kS1UttGp,
    kL1Utt,
    kL0Word,
    kS1Word,
    kL1Word,
    kS1UttIp,
};

const char* agent_name(AgentId agent);

// One golden expectation: an agent, its conditioning input, the expected
// distribution (sparse; omitted labels expect zero mass), and a tolerance.
struct ExpectedRow {
    AgentId agent;
    std::vector<std::string> context;  // word-level context, surfaces
    std::string input;  // utterance (joined) for listeners-over-utterances,
                        // world id for speakers, word surface for word-level
                        // listeners
    std::vector<std::pair<std::string, double>> expected;
    double tolerance = 0.005;

    std::string describe() const;
};

// A named reference game paired with the expected agent tables it must
// reproduce.
struct ScenarioFixture {
    std::string name;
    ReferenceGame game;
    std::vector<ExpectedRow> expected;
};

struct RowResult {
    std::string description;
    Distribution computed;
    std::vector<std::pair<std::string, double>> expected;
    double max_abs_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct ScenarioReport {
    std::string name;
    std::vector<RowResult> rows;

    bool all_passed() const;
};

// The four built-in fixtures: fig2, english-dress, spanish-vestido,
// sedivy-tall.
std::vector<ScenarioFixture> builtin_scenarios();

// nullptr when the name is not a built-in.
const ScenarioFixture* find_scenario(const std::vector<ScenarioFixture>& fixtures,
                                     const std::string& name);

// Evaluates every expected row against the agents; failures are report
// entries, never exceptions.
ScenarioReport run_scenario(const ScenarioFixture& fixture);

}  // namespace incrsa

#pragma once

#include <stdexcept>
#include <string>

namespace incrsa {

// Malformed input document (JSON or XML that does not parse).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally valid document that breaks a game invariant. Messages name
// the offending field.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Query against a valid game that references something it does not contain
// (unknown world, word, utterance, or trie prefix).
struct QueryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace incrsa

#ifndef SEPA_IO_HPP
#define SEPA_IO_HPP

#include <string>
#include <string_view>

#include "sepa/nfa.hpp"

namespace sepa {

// Document schema:
//   {"alphabet": [symbol...], "states": [name...], "initial": [name...],
//    "final": [name...], "transitions": [[src, symbol, dst]...]}
// Every field is required; symbols and states intern in document order.
// Unknown names, duplicates, empty names and an empty alphabet raise
// SchemaError, as does malformed JSON.
Nfa parse_nfa(std::string_view json_text);

// Deterministic serialization under the same schema: states in intern
// order, transitions sorted by interned triple.
std::string nfa_to_json(const Nfa& a);
std::string dfa_to_json(const Dfa& d);

// Graphviz rendering. Final states are doublecircle; states and edges are
// emitted in lexicographic name order so equal automata give equal bytes.
std::string to_dot(const Nfa& a, const std::string& graph_name = "automaton");

// FNV-1a 64-bit content digest, lowercase hex.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace sepa

#endif

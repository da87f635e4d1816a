#ifndef SEPA_NFA_HPP
#define SEPA_NFA_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "sepa/symbols.hpp"

namespace sepa {

struct Transition {
    StateId from;
    SymbolId symbol;
    StateId to;
    auto operator<=>(const Transition&) const = default;
};

// Nondeterministic finite automaton without epsilon moves. States and
// symbols are interned ids; name tables keep the document order.
// Instances are treated as immutable once built.
struct Nfa {
    Alphabet alphabet;
    std::vector<std::string> state_names;
    std::vector<StateId> initial;            // sorted, unique
    std::vector<StateId> final;              // sorted, unique
    std::vector<Transition> transitions;     // sorted, unique

    int num_states() const { return static_cast<int>(state_names.size()); }
    bool is_final(StateId q) const;
};

// Deterministic automaton: one initial state, at most one successor per
// (state, symbol). next[q][a] == kNoState encodes a missing transition.
inline constexpr StateId kNoState = -1;

struct Dfa {
    Alphabet alphabet;
    std::vector<std::string> state_names;
    StateId initial = 0;
    std::vector<StateId> final;              // sorted, unique
    std::vector<std::vector<StateId>> next;  // [state][symbol]
    bool complete = false;

    int num_states() const { return static_cast<int>(state_names.size()); }
    bool is_final(StateId q) const;
};

Nfa to_nfa(const Dfa& d);

// Drops every transition whose label is outside `keep`; the result's
// alphabet is the intersection keep ∩ alphabet (symbols reindexed, names
// kept). States are untouched.
Nfa restrict_alphabet(const Nfa& a, const std::vector<std::string>& keep);
Nfa restrict_alphabet(const Nfa& a, const SymSet& keep);  // keep over a.alphabet

// Strongly connected components; a partition of the states. Components are
// ordered by their smallest member, members ascend.
std::vector<std::vector<StateId>> sccs(const Nfa& a);

// Labels of transitions with both endpoints in p's component. Empty for a
// trivial component without a self-loop. Throws UnknownStateError.
SymSet scc_alphabet(const Nfa& a, StateId p);

// Intersection product over the shared symbol names; only reachable pairs
// become states. State names are "(x,y)" over the operand names.
Nfa product(const Nfa& a1, const Nfa& a2);

bool is_empty(const Nfa& a);
bool accepts(const Nfa& a, const Word& w);

// All accepted words of length <= max_len in shortlex order (length, then
// canonical symbol order).
std::vector<Word> enumerate(const Nfa& a, int max_len);

// Subset construction; the result is complete (an explicit sink absorbs
// missing moves) and contains only reachable subsets.
Dfa determinize(const Nfa& a);

// Unique minimal complete DFA: completes, drops unreachable states, merges
// equivalent ones, renumbers breadth-first so equal languages give
// identical tables.
Dfa minimize(const Dfa& d);

Dfa complement(const Dfa& d);

// Union alphabet: left operand's names in order, then the right operand's
// unseen names in order. The canonical frame for cross-automaton work.
Alphabet join_alphabets(const Alphabet& a, const Alphabet& b);

// Reindexes an automaton onto a larger alphabet that contains every symbol
// it uses. Throws UnknownSymbolError on a missing name.
Nfa with_alphabet(const Nfa& a, const Alphabet& target);

}  // namespace sepa

#endif

#ifndef SEPA_PT_HPP
#define SEPA_PT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sepa/bigint.hpp"
#include "sepa/nfa.hpp"
#include "sepa/symbols.hpp"

namespace sepa {

// Shared factorization skeleton (u_0, B_1, u_1, ..., B_p, u_p): p >= 0
// interleaved words and nonempty letter sets. Words and sets live over the
// witness's joint alphabet.
struct FactorizationPair {
    std::vector<Word> u;   // p + 1 entries
    std::vector<SymSet> b; // p entries, each nonempty
};

// A labeled run through one automaton: states.size() == labels.size() + 1.
struct LabeledRun {
    Word labels;
    std::vector<StateId> states;
};

// One block of the factorization realized in one automaton: a connector
// into the loop anchor (labels inside B), a closed loop at the anchor using
// every letter of B, and a connector out (labels inside B).
struct WitnessBlock {
    LabeledRun enter;
    LabeledRun loop;
    LabeledRun exit;

    StateId anchor() const { return loop.states.front(); }
};

// Interleaved realization: u_runs[i] spells u_i, blocks[i] realizes B_{i+1}.
struct WitnessSide {
    std::vector<LabeledRun> u_runs;   // p + 1 entries
    std::vector<WitnessBlock> blocks; // p entries
};

// Certificate of non-separability: both automata trace the same skeleton
// from an initial to a final state.
struct Witness {
    Alphabet alphabet;  // joint alphabet of the decided pair
    FactorizationPair pair;
    WitnessSide side1, side2;
};

struct PtVerdict {
    bool separable = false;
    std::optional<Witness> witness;  // present iff not separable
};

// Greatest alphabet B such that both q1 and q2 sit on closed walks using
// exactly the letters of B (computed as a decreasing fixpoint of component
// alphabets). Result is over the union alphabet, returned as names in
// canonical order; absent when no common loop alphabet exists.
// Throws UnknownStateError on out-of-range ids.
std::optional<std::vector<std::string>> max_common_loop_alphabet(const Nfa& a1, StateId q1,
                                                                 const Nfa& a2, StateId q2);

// Explicit summary construction: both automata extended with one fresh
// letter per endpoint 4-tuple that some loop pair connects. The table
// records, per fresh letter, the endpoints, the loop pair that produced it
// and its loop alphabet. Intended for small inputs; the decision procedure
// below explores the same product implicitly.
struct SummaryEntry {
    StateId p1, r1, p2, r2;  // connector endpoints in each automaton
    StateId loop1, loop2;    // recorded loop anchors
    std::vector<std::string> loop_alphabet;
    std::string symbol;      // fresh letter name
};

struct SummaryAutomata {
    Nfa a1_ext, a2_ext;
    std::vector<SummaryEntry> table;
};

SummaryAutomata build_summary_automata(const Nfa& a1, const Nfa& a2);

// Polynomial-time decision: separable by some piece-defined language, or a
// canonical witness of non-separability. The canonical witness minimizes
// the number of plain letters first, then the total skeleton length, with
// a deterministic tie-break, so block structure is preferred over spelling
// loops out letter by letter.
PtVerdict decide_pt_separable(const Nfa& a1, const Nfa& a2);

// Revalidates every witness obligation against the given automata: run
// chaining and membership of each step, initial/final endpoints, u_i
// labels equal to the skeleton words, connector labels inside B_i, loops
// closed, nonempty and using exactly B_i.
bool verify_witness(const Witness& w, const Nfa& a1, const Nfa& a2);

// Instantiates the skeleton with every loop traversed exactly kappa times.
// The two words are accepted by the respective automata and are
// piece-equivalent at level kappa. Throws InvalidWitnessError on a
// structurally broken witness. Words are over w.alphabet.
std::pair<Word, Word> pump_witness(const Witness& w, int kappa);

// Saturation level sufficient for a full separability certificate at the
// given state counts and alphabet size. Exact value; grows doubly
// exponentially in the alphabet size. Throws std::overflow_error when the
// exponent passes 100,000,000 bits.
BigInt kappa_bound(long k1, long k2, long alphabet_size);

}  // namespace sepa

#endif

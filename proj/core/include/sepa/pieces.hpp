#ifndef SEPA_PIECES_HPP
#define SEPA_PIECES_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "sepa/errors.hpp"
#include "sepa/nfa.hpp"
#include "sepa/symbols.hpp"

namespace sepa {

// The set of nonempty scattered subwords of some word, truncated to lengths
// <= kappa. Closed under taking subwords; canonical (sorted) storage, so
// equality is structural and hashing is cheap.
class PieceSet {
  public:
    explicit PieceSet(int kappa = 0) : kappa_(kappa) { rehash(); }
    PieceSet(int kappa, std::vector<Word> sorted_words);

    int kappa() const { return kappa_; }
    const std::vector<Word>& words() const { return words_; }
    std::size_t size() const { return words_.size(); }

    // Piece set of w·a given the piece set of w; the insertion rule keeps
    // subword closure without rescanning w.
    PieceSet extended(SymbolId a) const;

    bool contains(const Word& u) const;

    bool operator==(const PieceSet& other) const {
        return kappa_ == other.kappa_ && words_ == other.words_;
    }
    bool operator<(const PieceSet& other) const {
        if (kappa_ != other.kappa_) return kappa_ < other.kappa_;
        return words_ < other.words_;
    }
    std::size_t hash() const { return hash_; }

  private:
    void rehash();
    int kappa_;
    std::vector<Word> words_;  // sorted
    std::size_t hash_ = 0;
};

struct PieceSetHash {
    std::size_t operator()(const PieceSet& p) const { return p.hash(); }
};

// True iff u embeds into v as a scattered subword.
bool is_piece(const Word& u, const Word& v);

PieceSet pieces_up_to(const Word& w, int kappa);

// Piece-equivalence at level kappa: equal truncated piece sets.
bool kpeq(const Word& u, const Word& v, int kappa);

// All piece sets realized by accepted words, in canonical order.
struct AbstractionSet {
    int kappa = 0;
    std::vector<PieceSet> sets;  // sorted

    bool contains(const PieceSet& p) const;
};

AbstractionSet abstraction_set(const Nfa& a, int kappa, long long budget = kDefaultBudget);

// Disjointness of the two abstraction sets at level kappa.
bool pt_separable_at(const Nfa& a1, const Nfa& a2, int kappa,
                     long long budget = kDefaultBudget);

// Least kappa <= kappa_max at which the abstraction sets are disjoint.
std::optional<int> min_kappa(const Nfa& a1, const Nfa& a2, int kappa_max,
                             long long budget = kDefaultBudget);

// Complete DFA over a1's alphabet whose states are reachable piece sets and
// whose language is the piece-closure of L(a1) at level kappa. L(a1) is
// always a subset of the result's language.
struct SeparatorResult {
    Dfa dfa;
    int kappa = 0;
    std::size_t num_abstractions = 0;
};

SeparatorResult separator_dfa(const Nfa& a1, int kappa, long long budget = kDefaultBudget);

// Number of complete greedy rounds of the cyclic target sequence
// b_1..b_r, b_1..b_r, ... inside w (targets in canonical id order).
// 0 when w uses a letter outside b or b is empty.
int pattern_power(const Word& w, const SymSet& b);

// Greedy factorization w = w_1 a_1 ... w_l a_l w_{l+1} where a_j cycles
// through the alphabet in canonical order and each a_j is the first
// occurrence of its target in the remaining suffix.
struct KDecomposition {
    std::vector<Word> factors;  // w_1 .. w_l
    int length = 0;             // l
    int power = 0;              // floor(l / alphabet size)
    Word tail;                  // w_{l+1}
};

KDecomposition k_decomposition(const Word& w, int alphabet_size);

}  // namespace sepa

#endif

#ifndef SEPA_MONOID_HPP
#define SEPA_MONOID_HPP

#include <string>
#include <vector>

#include "sepa/bigint.hpp"
#include "sepa/nfa.hpp"
#include "sepa/symbols.hpp"

namespace sepa {

// Finite monoid of state transformations with a recognizing structure:
// element i acts on DFA states as elements[i]; table[x][y] is x followed
// by y; a word is accepted iff its image moves the initial state into the
// accepting set.
struct FiniteMonoid {
    Alphabet alphabet;
    std::vector<std::vector<StateId>> elements;  // transformation vectors
    std::vector<std::vector<int>> table;         // composition, row then column
    int identity = 0;
    std::vector<int> letter_image;               // per symbol
    std::vector<int> accepting;                  // sorted element ids

    int size() const { return static_cast<int>(elements.size()); }
    int mult(int x, int y) const {
        return table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    }
};

// Closure of the letter transformations of a complete DFA under
// composition, identity first, generators applied in canonical order.
// Throws IncompleteDfaError on a partial table and MonoidTooLargeError
// past 100000 elements.
FiniteMonoid transition_monoid(const Dfa& d);

// Image of a word under the canonical morphism. Throws UnknownSymbolError
// on an out-of-range symbol.
int evaluate(const FiniteMonoid& m, const Word& w);

// Product length that settles separability by unambiguous products for
// recognizers of the given sizes: (2*m1*m2 + 1) * (alphabet_size + 1)^2.
BigInt ul_kappa_bound(long m1, long m2, long alphabet_size);

std::string monoid_to_json(const FiniteMonoid& m);

}  // namespace sepa

#endif
